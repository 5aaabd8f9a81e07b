#include "kramers/hme_system.hpp"

#include "kramers/error.hpp"
#include "kramers/hermite_basis.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <string>

namespace kramers {

ShearSystem build_shear_system(int order)
{
    if (order < 3)
        throw InvalidArgument("shear system needs order >= 3, got " + std::to_string(order));

    ShearSystem sys;
    sys.order = order;
    sys.matrix_m = Eigen::MatrixXd::Zero(order, order);
    for (int i = 0; i + 1 < order; ++i) {
        sys.matrix_m(i, i + 1) = i + 1;
        sys.matrix_m(i + 1, i) = 1.0;
    }
    sys.matrix_q = Eigen::MatrixXd::Identity(order, order);
    sys.matrix_q(0, 0) = 0.0;

    const int n = order - 2;
    sys.matrix_mhat = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) {
        sys.matrix_mhat(i, i + 1) = i + 3;
        sys.matrix_mhat(i + 1, i) = 1.0;
    }
    return sys;
}

SpectralSplit spectral_split(const ShearSystem& sys)
{
    const int order = sys.order;
    const std::vector<double> roots = modified_hermite_roots(order);
    const int n_plus = order / 2 - 1;

    SpectralSplit split;
    split.order = order;
    split.lambda_plus.assign(roots.begin(), roots.begin() + n_plus);
    split.lambda_nonpos.assign(roots.begin() + n_plus, roots.end());
    split.rhat = rhat_columns(order - 2, roots);
    split.rhat_plus = split.rhat.leftCols(n_plus);
    split.rhat_minus = split.rhat.rightCols(static_cast<Eigen::Index>(roots.size()) - n_plus);
    return split;
}

ParityBlocks parity_blocks(const SpectralSplit& split)
{
    const int rows = static_cast<int>(split.rhat.rows());
    std::vector<int> even, odd; // zero-based indices of one-based even / odd rows
    for (int i = 0; i < rows; ++i)
        ((i + 1) % 2 == 0 ? even : odd).push_back(i);

    auto take = [](const Eigen::MatrixXd& m, const std::vector<int>& idx) {
        Eigen::MatrixXd out(static_cast<Eigen::Index>(idx.size()), m.cols());
        for (std::size_t r = 0; r < idx.size(); ++r)
            out.row(static_cast<Eigen::Index>(r)) = m.row(idx[r]);
        return out;
    };

    ParityBlocks blocks;
    blocks.plus_even = take(split.rhat_plus, even);
    blocks.plus_odd = take(split.rhat_plus, odd);
    blocks.minus_even = take(split.rhat_minus, even);
    blocks.minus_odd = take(split.rhat_minus, odd);
    for (int i : even)
        blocks.permutation.push_back(i + 1);
    for (int i : odd)
        blocks.permutation.push_back(i + 1);
    return blocks;
}

LayerWidths layer_widths(const SpectralSplit& split)
{
    LayerWidths w;
    w.lambda_plus = split.lambda_plus;
    if (!split.lambda_plus.empty())
        w.w_min = *std::min_element(split.lambda_plus.begin(), split.lambda_plus.end());
    return w;
}

std::vector<double> layer_rates(int order)
{
    std::vector<double> roots = modified_hermite_roots(order);
    roots.resize(order / 2 - 1);
    return roots;
}

Eigen::MatrixXd equilibrate(const Eigen::MatrixXd& a)
{
    Eigen::MatrixXd e = a;
    for (int sweep = 0; sweep < 3; ++sweep) {
        for (Eigen::Index i = 0; i < e.rows(); ++i) {
            const double s = e.row(i).cwiseAbs().maxCoeff();
            if (s > 0.0)
                e.row(i) /= s;
        }
        for (Eigen::Index j = 0; j < e.cols(); ++j) {
            const double s = e.col(j).cwiseAbs().maxCoeff();
            if (s > 0.0)
                e.col(j) /= s;
        }
    }
    return e;
}

double scaled_rank_ratio(const Eigen::MatrixXd& a)
{
    if (a.size() == 0)
        return 1.0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(equilibrate(a));
    const auto& sv = svd.singularValues();
    return sv(sv.size() - 1) / sv(0);
}

} // namespace kramers
