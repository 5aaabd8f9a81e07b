#include "report.hpp"

#include "kramers/kramers.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <thread>

namespace kramers::cli {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& what) { throw CommandError(kExitValidation, what); }

int exit_code_for(kr_status s)
{
    switch (s) {
    case KR_ERR_INVALID:
        return kExitValidation;
    case KR_ERR_NUMERICAL:
        return kExitNumerical;
    default:
        return kExitFailure;
    }
}

void check(kr_status s)
{
    if (s != KR_OK)
        throw CommandError(exit_code_for(s), kr_last_error());
}

class Solution {
public:
    Solution(int order, double chi, double kn, double sigma12)
    {
        check(kr_solution_create(order, chi, kn, sigma12, &h_));
        check(kr_solution_info_get(h_, &info_));
        std::size_t n = 0;
        check(kr_solution_modes(h_, nullptr, nullptr, 0, &n));
        lambda_hat_.resize(n);
        c_hat_.resize(n);
        check(kr_solution_modes(h_, lambda_hat_.data(), c_hat_.data(), n, &n));
    }
    Solution(const Solution&) = delete;
    Solution& operator=(const Solution&) = delete;
    ~Solution() { kr_solution_destroy(h_); }

    const kr_solution_info& info() const { return info_; }
    const std::vector<double>& lambda_hat() const { return lambda_hat_; }
    const std::vector<double>& c_hat() const { return c_hat_; }

    kr_point eval(double y) const
    {
        kr_point p;
        check(kr_solution_eval(h_, y, &p));
        return p;
    }

    json coefficients() const
    {
        json modes = json::array();
        for (std::size_t i = 0; i < lambda_hat_.size(); ++i)
            modes.push_back({{"lambda_hat", lambda_hat_[i]}, {"c_hat", c_hat_[i]}});
        return {{"order", info_.order}, {"chi", info_.chi},     {"kn", info_.kn},
                {"sigma12", info_.sigma12}, {"c0", info_.c0}, {"modes", modes}};
    }

private:
    kr_solution* h_ = nullptr;
    kr_solution_info info_{};
    std::vector<double> lambda_hat_;
    std::vector<double> c_hat_;
};

std::vector<double> spectrum(int order)
{
    std::size_t n = 0;
    check(kr_spectrum(order, nullptr, 0, &n));
    std::vector<double> out(n);
    check(kr_spectrum(order, out.data(), n, &n));
    return out;
}

std::optional<double> min_rate(int order)
{
    const std::vector<double> s = spectrum(order);
    if (s.empty())
        return std::nullopt;
    return *std::min_element(s.begin(), s.end());
}

/// Order-preserving parallel map; the first failure in index order is rethrown.
template <class T, class F>
std::vector<T> ordered_map(std::size_t n, int threads, F f)
{
    std::vector<T> out(n);
    std::vector<std::exception_ptr> errors(n);
    auto work = [&](std::size_t start, std::size_t stride) {
        for (std::size_t i = start; i < n; i += stride) {
            try {
                out[i] = f(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t t = std::max<std::size_t>(1, std::min<std::size_t>(threads, n));
    if (t == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t k = 0; k < t; ++k)
            pool.emplace_back(work, k, t);
        for (auto& th : pool)
            th.join();
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

class Table {
public:
    explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void add(std::vector<json> row) { rows_.push_back(std::move(row)); }

    std::string csv() const
    {
        std::ostringstream os;
        for (std::size_t i = 0; i < columns_.size(); ++i)
            os << (i ? "," : "") << columns_[i];
        os << '\n';
        for (const auto& row : rows_) {
            for (std::size_t i = 0; i < row.size(); ++i)
                os << (i ? "," : "") << cell(row[i]);
            os << '\n';
        }
        return os.str();
    }

    json rows_json() const
    {
        json out = json::array();
        for (const auto& row : rows_) {
            json obj = json::object();
            for (std::size_t i = 0; i < row.size(); ++i) {
                const json& v = row[i];
                obj[columns_[i]] = v.is_number_float() && !std::isfinite(v.get<double>()) ? json() : v;
            }
            out.push_back(obj);
        }
        return out;
    }

private:
    static std::string cell(const json& v)
    {
        if (v.is_number_float())
            return format_number(v.get<double>());
        if (v.is_number_integer())
            return std::to_string(v.get<long long>());
        if (v.is_boolean())
            return v.get<bool>() ? "true" : "false";
        if (v.is_null())
            return "";
        std::string s = v.get<std::string>();
        std::replace(s.begin(), s.end(), ',', ';');
        std::replace(s.begin(), s.end(), '\n', ' ');
        return s;
    }

    std::vector<std::string> columns_;
    std::vector<std::vector<json>> rows_;
};

json parameters(const RunConfig& cfg)
{
    return {{"order", cfg.order}, {"chi", cfg.chi}, {"kn", cfg.kn}, {"sigma12", cfg.sigma12}};
}

std::string render(const RunConfig& cfg, const Table& table, json doc)
{
    if (cfg.format == Format::csv)
        return table.csv();
    doc["command"] = command_name(*cfg.command);
    doc["rows"] = table.rows_json();
    return doc.dump(2) + "\n";
}

std::vector<double> linspace(double a, double b, int n)
{
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        v[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
    if (n > 1)
        v.back() = b;
    return v;
}

std::vector<int> orders_or(const RunConfig& cfg, const std::string& fallback)
{
    return cfg.orders.empty() ? parse_order_list(fallback) : cfg.orders;
}

std::vector<double> chis_or_default(const RunConfig& cfg)
{
    if (!cfg.chis.empty())
        return cfg.chis;
    std::vector<double> out;
    for (int i = 1; i <= 10; ++i)
        out.push_back(i / 10.0);
    return out;
}

CommandResult cmd_solve(const RunConfig& cfg)
{
    const Solution s(cfg.order, cfg.chi, cfg.kn, cfg.sigma12);
    const kr_point wall = s.eval(0.0);
    Table t({"order", "chi", "kn", "sigma12", "c0", "zeta", "u_defect_wall", "mu_eff_ratio_wall"});
    t.add({s.info().order, s.info().chi, s.info().kn, s.info().sigma12, s.info().c0, s.info().zeta,
           wall.u_defect, wall.mu_eff_ratio});
    if (cfg.format == Format::csv)
        return {t.csv(), kExitOk};
    json doc = s.coefficients();
    doc["zeta"] = s.info().zeta;
    doc["u_defect_wall"] = wall.u_defect;
    doc["mu_eff_ratio_wall"] = wall.mu_eff_ratio;
    return {doc.dump(2) + "\n", kExitOk};
}

CommandResult cmd_profile(const RunConfig& cfg)
{
    const Solution s(cfg.order, cfg.chi, cfg.kn, cfg.sigma12);
    Table t({"y", "u_tilde", "u_defect", "mu_eff_ratio"});
    for (double y : make_grid(cfg)) {
        const kr_point p = s.eval(y);
        t.add({y, p.u_tilde, p.u_defect, p.mu_eff_ratio});
    }
    json doc = {{"coefficients", s.coefficients()}, {"zeta", s.info().zeta}};
    return {render(cfg, t, doc), kExitOk};
}

CommandResult cmd_slip_sweep(const RunConfig& cfg)
{
    struct Task {
        int order;
        double chi;
    };
    std::vector<Task> tasks;
    for (int m : orders_or(cfg, "4:40"))
        for (double chi : chis_or_default(cfg))
            tasks.push_back({m, chi});

    struct Row {
        double zeta = std::nan("");
        std::string error;
    };
    const auto rows = ordered_map<Row>(tasks.size(), cfg.threads, [&](std::size_t i) {
        Row r;
        kr_solution* h = nullptr;
        const kr_status st = kr_solution_create(tasks[i].order, tasks[i].chi, cfg.kn, cfg.sigma12, &h);
        if (st == KR_OK) {
            kr_solution_info info;
            check(kr_solution_info_get(h, &info));
            r.zeta = info.zeta;
            kr_solution_destroy(h);
        } else if (st == KR_ERR_NUMERICAL) {
            r.error = std::string("numerical: ") + kr_last_error();
        } else {
            throw CommandError(exit_code_for(st), kr_last_error());
        }
        return r;
    });

    Table t({"M", "chi", "kn", "zeta", "error"});
    for (std::size_t i = 0; i < tasks.size(); ++i)
        t.add({tasks[i].order, tasks[i].chi, cfg.kn, rows[i].zeta,
               rows[i].error.empty() ? json() : json(rows[i].error)});
    json doc = {{"kn", cfg.kn}, {"sigma12", cfg.sigma12}};
    return {render(cfg, t, doc), kExitOk};
}

CommandResult cmd_spectrum(const RunConfig& cfg)
{
    Table t({"M", "index", "lambda_hat", "w_M", "parity_ordering"});
    for (int m : orders_or(cfg, "4:40")) {
        const std::vector<double> rates = spectrum(m);
        if (rates.empty())
            continue;
        const double w = *std::min_element(rates.begin(), rates.end());
        bool ordered = true;
        for (int nb : {m - 1, m + 1}) {
            const std::optional<double> wn = min_rate(nb);
            if (!wn)
                continue;
            ordered = ordered && (m % 2 == 0 ? w < *wn : w > *wn);
        }
        for (std::size_t i = 0; i < rates.size(); ++i)
            t.add({m, static_cast<int>(i + 1), rates[i], w, ordered});
    }
    return {render(cfg, t, json::object()), kExitOk};
}

CommandResult cmd_viscosity(const RunConfig& cfg)
{
    const Solution model(cfg.order, cfg.chi, cfg.kn, cfg.sigma12);
    const Solution reference(cfg.reference_order, cfg.chi, cfg.kn, cfg.sigma12);
    const double nan = std::nan("");

    Table t({"y", "hme_M", "gu", "lockerby", "reference", "err_hme", "err_gu", "err_lockerby"});
    for (double y : make_grid(cfg)) {
        const double hme = model.eval(y).mu_eff_ratio;
        const double ref = reference.eval(y).mu_eff_ratio;
        double gu = 0.0;
        check(kr_viscosity_gu(cfg.chi, cfg.kn, y, &gu));
        double lockerby = nan;
        if (y > 0.0)
            check(kr_viscosity_lockerby(y, &lockerby));
        t.add({y, hme, gu, lockerby, ref, ref - hme, ref - gu, y > 0.0 ? ref - lockerby : nan});
    }
    json doc = parameters(cfg);
    doc["reference_order"] = cfg.reference_order;
    doc["lockerby_wall_sentinel"] = "null (nan in CSV) at y = 0";
    return {render(cfg, t, doc), kExitOk};
}

CommandResult cmd_oracle(const RunConfig& cfg)
{
    const double y_max = cfg.y_max.value_or(0.0);
    kr_oracle* h = nullptr;
    check(kr_oracle_run(cfg.order, cfg.chi, cfg.kn, cfg.sigma12, y_max, cfg.n_cells, &h));
    std::unique_ptr<kr_oracle, void (*)(kr_oracle*)> guard(h, kr_oracle_destroy);

    kr_oracle_summary s;
    check(kr_oracle_summary_get(h, &s));

    struct Check {
        std::string name;
        double value, tolerance;
        bool asserted, pass;
    };
    std::vector<Check> checks;
    for (std::size_t i = 0; i < kr_oracle_check_count(h); ++i) {
        kr_oracle_check c;
        check(kr_oracle_check_get(h, i, &c));
        checks.push_back({c.name, c.value, c.tolerance, c.asserted != 0, c.pass != 0});
    }

    double coarse = 0.0, fine = 0.0, ratio = 0.0;
    check(kr_mesh_convergence(cfg.order, cfg.chi, cfg.kn, s.y_max, cfg.n_cells, &coarse, &fine, &ratio));
    // With no layer modes (M = 3) the scheme is exact up to rounding and the
    // ratio carries no information.
    const double ratio_dev = std::abs(ratio - 4.0);
    const bool resolved = fine > 1e-10;
    checks.push_back({"mesh_ratio_second_order", ratio_dev, 0.5, resolved, ratio_dev <= 0.5});

    bool ok = true;
    for (const auto& c : checks)
        ok = ok && (!c.asserted || c.pass);
    const int code = ok ? kExitOk : kExitNumerical;

    if (cfg.format == Format::csv) {
        Table t({"check", "value", "tolerance", "asserted", "pass"});
        for (const auto& c : checks)
            t.add({c.name, c.value, c.tolerance, c.asserted, c.pass});
        return {t.csv(), code};
    }

    json jc = json::array();
    for (const auto& c : checks)
        jc.push_back({{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance},
                      {"asserted", c.asserted}, {"pass", c.pass}});
    json doc = {
        {"command", "oracle"},
        {"order", s.order},
        {"chi", s.chi},
        {"kn", s.kn},
        {"sigma12", cfg.sigma12},
        {"y_max", s.y_max},
        {"n_cells", s.n_cells},
        {"profile_error_analytic", s.profile_error_analytic},
        {"profile_error_modal", s.profile_error_modal},
        {"model_gap", s.model_gap},
        {"wall_moment_residual", s.wall_moment_residual},
        {"wall_ordinate_residual", s.wall_ordinate_residual},
        {"ode_residual", s.ode_residual},
        {"s_identity_error", s.s_identity_error},
        {"s_identity_error_exact", s.s_identity_error_exact},
        {"kv_condition", s.kv_condition},
        {"wall_inflow_max", s.wall_inflow_max},
        {"far_slope_rel_error", s.far_slope_rel_error},
        {"solve_residual", s.solve_residual},
        {"slip_moment", s.slip_moment},
        {"slip_ordinates", s.slip_ordinates},
        {"identities",
         {{"rw_one", s.identity_rw_one}, {"omega", s.identity_omega}, {"inverse", s.identity_inverse},
          {"inverse_scaled", s.identity_inverse_scaled}}},
        {"mesh_convergence", {{"coarse_error", coarse}, {"fine_error", fine}, {"ratio", ratio}}},
        {"checks", jc},
        {"all_asserted_pass", ok},
    };
    return {doc.dump(2) + "\n", code};
}

CommandResult cmd_convergence(const RunConfig& cfg)
{
    const std::vector<int> orders = orders_or(cfg, "4:40:2");
    const std::vector<double> grid = make_grid(cfg);

    struct Row {
        double zeta = 0.0;
        std::vector<double> defect;
    };
    const auto rows = ordered_map<Row>(orders.size(), cfg.threads, [&](std::size_t i) {
        const Solution s(orders[i], cfg.chi, cfg.kn, cfg.sigma12);
        Row r;
        r.zeta = s.info().zeta;
        for (double y : grid)
            r.defect.push_back(s.eval(y).u_defect);
        return r;
    });

    Table t({"M", "zeta", "zeta_step", "defect_step", "zeta_step_decreasing", "defect_step_decreasing"});
    double prev_zs = std::nan(""), prev_ds = std::nan("");
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (i == 0) {
            t.add({orders[i], rows[i].zeta, json(), json(), json(), json()});
            continue;
        }
        const double zs = std::abs(rows[i].zeta - rows[i - 1].zeta);
        double ds = 0.0;
        for (std::size_t k = 0; k < grid.size(); ++k)
            ds = std::max(ds, std::abs(rows[i].defect[k] - rows[i - 1].defect[k]));
        t.add({orders[i], rows[i].zeta, zs, ds, std::isnan(prev_zs) ? json() : json(zs < prev_zs),
               std::isnan(prev_ds) ? json() : json(ds < prev_ds)});
        prev_zs = zs;
        prev_ds = ds;
    }
    return {render(cfg, t, parameters(cfg)), kExitOk};
}

CommandResult cmd_det_scan(const RunConfig& cfg)
{
    struct Task {
        int order;
        double chi;
    };
    std::vector<Task> tasks;
    const std::vector<double> chis =
        cfg.chis.empty() ? linspace(cfg.chi_min, cfg.chi_max, cfg.chi_points) : cfg.chis;
    for (int m : orders_or(cfg, "3:40"))
        for (double chi : chis)
            tasks.push_back({m, chi});

    struct Row {
        double det = 0.0, cond = 0.0;
        bool flagged = false;
    };
    const auto rows = ordered_map<Row>(tasks.size(), cfg.threads, [&](std::size_t i) {
        Row r;
        int singular = 0;
        check(kr_boundary_det(tasks[i].order, tasks[i].chi, &r.det, &r.cond, &singular));
        r.flagged = singular != 0 || !std::isfinite(r.det) || r.det == 0.0;
        return r;
    });

    Table t({"M", "chi", "det_A", "cond_A", "flagged"});
    for (std::size_t i = 0; i < tasks.size(); ++i)
        t.add({tasks[i].order, tasks[i].chi, rows[i].det, rows[i].cond, rows[i].flagged});
    json doc = {{"singular_rcond", kr_singular_rcond()}};
    return {render(cfg, t, doc), kExitOk};
}

} // namespace

Command parse_command(const std::string& name)
{
    static const std::pair<const char*, Command> table[] = {
        {"solve", Command::solve},         {"profile", Command::profile},
        {"slip-sweep", Command::slip_sweep}, {"spectrum", Command::spectrum},
        {"viscosity", Command::viscosity}, {"oracle", Command::oracle},
        {"convergence", Command::convergence}, {"det-scan", Command::det_scan},
    };
    for (const auto& [n, c] : table)
        if (name == n)
            return c;
    invalid("unknown command '" + name + "'");
}

std::string command_name(Command c)
{
    switch (c) {
    case Command::solve: return "solve";
    case Command::profile: return "profile";
    case Command::slip_sweep: return "slip-sweep";
    case Command::spectrum: return "spectrum";
    case Command::viscosity: return "viscosity";
    case Command::oracle: return "oracle";
    case Command::convergence: return "convergence";
    case Command::det_scan: return "det-scan";
    }
    return "?";
}

Format parse_format(const std::string& name)
{
    if (name == "csv")
        return Format::csv;
    if (name == "json")
        return Format::json;
    invalid("unknown format '" + name + "' (expected csv or json)");
}

std::vector<int> parse_order_list(const std::string& text)
{
    auto to_int = [&](const std::string& s) {
        try {
            std::size_t pos = 0;
            const int v = std::stoi(s, &pos);
            if (pos != s.size())
                throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            invalid("bad order list '" + text + "'");
        }
    };
    std::vector<int> out;
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        for (std::string p; std::getline(ss, p, ':');)
            parts.push_back(p);
        if (parts.size() < 2 || parts.size() > 3)
            invalid("bad order range '" + text + "'");
        const int a = to_int(parts[0]);
        const int b = to_int(parts[1]);
        const int step = parts.size() == 3 ? to_int(parts[2]) : 1;
        if (step <= 0 || b < a)
            invalid("bad order range '" + text + "'");
        for (int m = a; m <= b; m += step)
            out.push_back(m);
    } else {
        std::stringstream ss(text);
        for (std::string p; std::getline(ss, p, ',');)
            out.push_back(to_int(p));
    }
    if (out.empty())
        invalid("empty order list");
    return out;
}

std::vector<double> parse_double_list(const std::string& text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ',');) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(p, &pos));
            if (pos != p.size())
                throw std::invalid_argument(p);
        } catch (const std::exception&) {
            invalid("bad number list '" + text + "'");
        }
    }
    if (out.empty())
        invalid("empty number list");
    return out;
}

void apply_json(RunConfig& cfg, const json& doc)
{
    if (!doc.is_object())
        invalid("config must be a JSON object");
    try {
        for (const auto& [key, v] : doc.items()) {
            if (key == "command")
                cfg.command = parse_command(v.get<std::string>());
            else if (key == "order")
                cfg.order = v.get<int>();
            else if (key == "chi")
                cfg.chi = v.get<double>();
            else if (key == "knudsen")
                cfg.kn = v.get<double>();
            else if (key == "sigma12")
                cfg.sigma12 = v.get<double>();
            else if (key == "y-min")
                cfg.y_min = v.get<double>();
            else if (key == "y-max")
                cfg.y_max = v.get<double>();
            else if (key == "n-points")
                cfg.n_points = v.get<int>();
            else if (key == "y-list")
                cfg.y_list = v.get<std::vector<double>>();
            else if (key == "orders")
                cfg.orders = v.is_string() ? parse_order_list(v.get<std::string>()) : v.get<std::vector<int>>();
            else if (key == "chis")
                cfg.chis = v.is_string() ? parse_double_list(v.get<std::string>()) : v.get<std::vector<double>>();
            else if (key == "chi-min")
                cfg.chi_min = v.get<double>();
            else if (key == "chi-max")
                cfg.chi_max = v.get<double>();
            else if (key == "chi-points")
                cfg.chi_points = v.get<int>();
            else if (key == "n-cells")
                cfg.n_cells = v.get<int>();
            else if (key == "reference-order")
                cfg.reference_order = v.get<int>();
            else if (key == "threads")
                cfg.threads = v.get<int>();
            else if (key == "output")
                cfg.output = v.get<std::string>();
            else if (key == "format")
                cfg.format = parse_format(v.get<std::string>());
            else
                invalid("unknown config key '" + key + "'");
        }
    } catch (const json::exception& e) {
        invalid(std::string("config type error: ") + e.what());
    }
}

RunConfig load_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw CommandError(kExitFailure, "cannot open config file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        invalid("config file '" + path + "' is not valid JSON: " + e.what());
    }
    RunConfig cfg;
    apply_json(cfg, doc);
    return cfg;
}

void validate(const RunConfig& cfg)
{
    if (!cfg.command)
        invalid("no command given");
    if (cfg.order < 3)
        invalid("order must be >= 3");
    if (!(cfg.chi > 0.0 && cfg.chi <= 1.0))
        invalid("chi must lie in (0, 1]");
    if (!(cfg.kn > 0.0) || !std::isfinite(cfg.kn))
        invalid("knudsen must be positive");
    if (!std::isfinite(cfg.sigma12) || cfg.sigma12 == 0.0)
        invalid("sigma12 must be finite and nonzero");
    if (!(cfg.y_min >= 0.0))
        invalid("y-min must be >= 0");
    if (cfg.y_max && !(*cfg.y_max >= cfg.y_min) && *cfg.command != Command::oracle)
        invalid("y-max must be >= y-min");
    if (cfg.n_points < 1)
        invalid("n-points must be >= 1");
    for (std::size_t i = 0; i < cfg.y_list.size(); ++i) {
        if (!(cfg.y_list[i] >= 0.0))
            invalid("y-list entries must be >= 0");
        if (i > 0 && !(cfg.y_list[i] > cfg.y_list[i - 1]))
            invalid("y-list must be strictly increasing");
    }
    for (int m : cfg.orders)
        if (m < 3)
            invalid("orders must be >= 3");
    for (double c : cfg.chis)
        if (!(c > 0.0 && c <= 1.0))
            invalid("chis must lie in (0, 1]");
    if (!(cfg.chi_min > 0.0 && cfg.chi_max <= 1.0 && cfg.chi_min <= cfg.chi_max))
        invalid("chi range must satisfy 0 < chi-min <= chi-max <= 1");
    if (cfg.chi_points < 1)
        invalid("chi-points must be >= 1");
    if (cfg.reference_order < 3)
        invalid("reference-order must be >= 3");
    if (cfg.threads < 1)
        invalid("threads must be >= 1");
}

std::vector<double> make_grid(const RunConfig& cfg)
{
    if (!cfg.y_list.empty())
        return cfg.y_list;
    double y_max = 5.0;
    if (cfg.y_max)
        y_max = *cfg.y_max;
    else if (cfg.command == Command::viscosity)
        y_max = 20.0 * cfg.kn;
    if (!(y_max >= cfg.y_min))
        invalid("y-max must be >= y-min");
    return linspace(cfg.y_min, y_max, cfg.n_points);
}

std::string format_number(double x)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

CommandResult run(const RunConfig& cfg)
{
    validate(cfg);
    switch (*cfg.command) {
    case Command::solve: return cmd_solve(cfg);
    case Command::profile: return cmd_profile(cfg);
    case Command::slip_sweep: return cmd_slip_sweep(cfg);
    case Command::spectrum: return cmd_spectrum(cfg);
    case Command::viscosity: return cmd_viscosity(cfg);
    case Command::oracle: return cmd_oracle(cfg);
    case Command::convergence: return cmd_convergence(cfg);
    case Command::det_scan: return cmd_det_scan(cfg);
    }
    invalid("unhandled command");
}

int execute(const RunConfig& cfg)
{
    const CommandResult r = run(cfg);
    if (cfg.output == "-") {
        std::cout << r.text << std::flush;
    } else {
        std::ofstream out(cfg.output, std::ios::binary);
        if (!out)
            throw CommandError(kExitFailure, "cannot open output file '" + cfg.output + "'");
        out << r.text;
        out.close();
        if (!out)
            throw CommandError(kExitFailure, "failed writing '" + cfg.output + "'");
    }
    return r.exit_code;
}

} // namespace kramers::cli
