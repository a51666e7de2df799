#include "cubicvpe/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cubicvpe/errors.hpp"
#include "cubicvpe/rs_perturbation.hpp"
#include "cubicvpe/wkb.hpp"

namespace cubicvpe::report {

namespace {

using cplx = std::complex<double>;

CoefficientStore& store()
{
    static CoefficientStore s;
    return s;
}

VpeEnergyFunction energy_function(int n, int order)
{
    // Even orders up to order + 1 so that odd N sees its last even term too.
    return VpeEnergyFunction(store().get(n, order + 1), order);
}

struct Table1Cell {
    int n;
    double lambda;
    cplx ccr;
    cplx vpe;
    double ccr_tolerance; // relative; the lambda = 50 CCR entry has four digits
};

const std::vector<Table1Cell>& table1_reference()
{
    static const std::vector<Table1Cell> cells{
        {0, 0.18, {0.43386176, 0.02524252}, {0.43373, 0.02530}, 1e-6},
        {0, 1.0, {0.61288846, 0.40859267}, {0.61285, 0.40861}, 1e-6},
        {0, 100.0, {3.89396500, 2.82900663}, {3.89383, 2.82916}, 1e-6},
        {4, 0.07, {3.87967181, 0.05672784}, {3.87705, 0.05811}, 1e-6},
        {4, 0.1, {3.59046484, 0.87272058}, {3.59583, 0.87116}, 1e-6},
        {4, 1.0, {8.13685894, 5.82497954}, {8.13549, 5.8239}, 1e-6},
        {4, 10.0, {20.4997005, 14.8887626}, {20.4963, 14.8863}, 1e-6},
        {4, 20.0, {27.051325, 19.651713}, {27.0469, 19.6485}, 1e-6},
        {4, 50.0, {39.03, 28.35}, {39.0215, 28.3501}, 1e-3},
    };
    return cells;
}

const std::vector<cplx>& kappa_reference()
{
    static const std::vector<cplx> k{
        {0.617159, 0.448390}, {2.245672, 1.631577}, {4.036069, 2.932440}, {6.038479, 4.387212}, {8.160972, 5.929293},
    };
    return k;
}

double relative_error(cplx value, cplx reference)
{
    return std::abs(value - reference) / std::abs(reference);
}

void require_positive_grid(const std::vector<double>& grid, const char* what)
{
    if (grid.empty()) {
        throw ContractViolation(std::string(what) + ": empty lambda grid");
    }
    for (double l : grid) {
        if (!(l > 0.0) || !std::isfinite(l)) {
            throw DomainError(std::string(what) + ": lambda must be positive and finite");
        }
    }
}

void require_levels(const std::vector<int>& levels)
{
    if (levels.empty()) {
        throw ContractViolation("empty set of quantum numbers");
    }
    for (int n : levels) {
        if (n < 0) {
            throw ContractViolation("quantum numbers must be non-negative");
        }
    }
}

bool contains(const std::vector<double>& grid, double x)
{
    return std::any_of(grid.begin(), grid.end(), [&](double g) { return std::abs(g - x) <= 1e-12 * std::abs(x); });
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

double parse_double(const std::string& token)
{
    const std::string t = trim(token);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
        throw ContractViolation("not a number: '" + token + "'");
    }
    return value;
}

int parse_int(const std::string& token)
{
    const std::string t = trim(token);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
        throw ContractViolation("not an integer: '" + token + "'");
    }
    return value;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(s);
    while (std::getline(in, field, sep)) {
        out.push_back(field);
    }
    if (!s.empty() && s.back() == sep) {
        out.emplace_back();
    }
    return out;
}

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') {
            out += '"';
        }
    }
    return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else if (c != '\r') {
            fields.back() += c;
        }
    }
    return fields;
}

Cell parse_cell(const std::string& s)
{
    if (s.empty()) {
        return std::monostate{};
    }
    long long i = 0;
    if (auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), i); ec == std::errc() && p == s.data() + s.size()) {
        return i;
    }
    double d = 0.0;
    if (auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), d); ec == std::errc() && p == s.data() + s.size()) {
        return d;
    }
    if (s == "inf" || s == "-inf" || s == "nan") {
        return s == "nan" ? std::nan("") : (s[0] == '-' ? -INFINITY : INFINITY);
    }
    return s;
}

Cell opt(std::optional<double> v)
{
    return v ? Cell(*v) : Cell(std::monostate{});
}

std::string short_message(const std::exception& e)
{
    return std::string("failed: ") + e.what();
}

} // namespace

void Table::add(std::vector<Cell> row)
{
    if (row.size() != columns.size()) {
        throw ContractViolation("row width " + std::to_string(row.size()) + " does not match " +
                                std::to_string(columns.size()) + " columns");
    }
    rows.push_back(std::move(row));
}

std::size_t Table::column(const std::string& name) const
{
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) {
        throw ContractViolation("no column '" + name + "'");
    }
    return static_cast<std::size_t>(it - columns.begin());
}

std::string format_number(double x)
{
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

std::string format_cell(const Cell& c)
{
    struct Visitor {
        std::string operator()(std::monostate) const { return {}; }
        std::string operator()(long long i) const { return std::to_string(i); }
        std::string operator()(double d) const { return format_number(d); }
        std::string operator()(const std::string& s) const { return s; }
    };
    return std::visit(Visitor{}, c);
}

void write_csv(std::ostream& out, const Table& t)
{
    for (std::size_t k = 0; k < t.columns.size(); ++k) {
        out << (k ? "," : "") << csv_escape(t.columns[k]);
    }
    out << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            out << (k ? "," : "") << csv_escape(format_cell(row[k]));
        }
        out << '\n';
    }
}

void write_json(std::ostream& out, const Table& t)
{
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t k = 0; k < row.size(); ++k) {
            const Cell& c = row[k];
            if (std::holds_alternative<std::monostate>(c)) {
                obj[t.columns[k]] = nullptr;
            } else if (const auto* i = std::get_if<long long>(&c)) {
                obj[t.columns[k]] = *i;
            } else if (const auto* d = std::get_if<double>(&c)) {
                // Round to the printed precision; non-finite values as strings.
                if (std::isfinite(*d)) {
                    obj[t.columns[k]] = std::stod(format_number(*d));
                } else {
                    obj[t.columns[k]] = format_number(*d);
                }
            } else {
                obj[t.columns[k]] = std::get<std::string>(c);
            }
        }
        rows.push_back(std::move(obj));
    }
    out << rows.dump(2) << '\n';
}

Table read_csv(std::istream& in)
{
    Table t;
    std::string line;
    if (!std::getline(in, line)) {
        throw ContractViolation("read_csv: missing header");
    }
    t.columns = split_csv_line(line);
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<Cell> row;
        for (const auto& f : split_csv_line(line)) {
            row.push_back(parse_cell(f));
        }
        t.add(std::move(row));
    }
    return t;
}

std::vector<double> parse_lambda_grid(const std::string& text)
{
    const std::string s = trim(text);
    if (s.empty()) {
        throw ContractViolation("empty lambda specification");
    }
    if (s.find(':') != std::string::npos) {
        const auto parts = split(s, ':');
        if (parts.size() != 3) {
            throw ContractViolation("lambda range must be start:stop:count");
        }
        const double start = parse_double(parts[0]);
        const double stop = parse_double(parts[1]);
        const int count = parse_int(parts[2]);
        if (count < 2 || !(stop > start)) {
            throw ContractViolation("lambda range needs stop > start and count >= 2");
        }
        std::vector<double> grid;
        for (int i = 0; i < count; ++i) {
            grid.push_back(i + 1 == count ? stop : start + (stop - start) * i / (count - 1));
        }
        return grid;
    }
    std::vector<double> grid;
    for (const auto& part : split(s, ',')) {
        grid.push_back(parse_double(part));
    }
    return grid;
}

std::vector<int> parse_levels(const std::string& text)
{
    const std::string s = trim(text);
    std::vector<int> levels;
    if (s.find(':') != std::string::npos) {
        const auto parts = split(s, ':');
        if (parts.size() != 2) {
            throw ContractViolation("level range must be first:last");
        }
        const int first = parse_int(parts[0]);
        const int last = parse_int(parts[1]);
        if (last < first) {
            throw ContractViolation("level range must be ascending");
        }
        for (int n = first; n <= last; ++n) {
            levels.push_back(n);
        }
    } else {
        for (const auto& part : split(s, ',')) {
            levels.push_back(parse_int(part));
        }
    }
    require_levels(levels);
    return levels;
}

Report rs_listing(const std::vector<int>& levels, int order)
{
    require_levels(levels);
    if (order < 0) {
        throw ContractViolation("RS order must be non-negative");
    }
    Report r;
    r.table.columns = {"n", "method", "order", "j", "exact", "value"};
    for (int n : levels) {
        const RsCoefficients c = store().get(n, order);
        for (int j = 0; j <= order; ++j) {
            r.table.add({static_cast<long long>(n), std::string("RS"), static_cast<long long>(order),
                         static_cast<long long>(j), to_string(c.coeffs[j]), to_double(c.coeffs[j])});
        }
    }
    return r;
}

Report vpe_rows(const VpeRequest& q)
{
    require_levels(q.levels);
    require_positive_grid(q.lambdas, "vpe");
    if (q.order < 1 || q.order % 2 == 0) {
        throw ContractViolation("VPE order must be odd and positive");
    }
    std::vector<double> grid = q.lambdas;
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    SweepOptions options = q.sweep;
    options.newton.omega = q.omega;
    Report r;
    r.table.columns = {"lambda", "n", "method", "order", "re_E", "im_E", "re_Omega", "im_Omega", "re_x0", "im_x0",
                       "residual", "iterations", "curvature", "branch", "status"};
    for (int n : q.levels) {
        const VpeEnergyFunction f = energy_function(n, q.order);
        auto emit = [&](double lambda, const OptimizationResult& o) {
            r.table.add({lambda, static_cast<long long>(n), std::string("VPE"), static_cast<long long>(q.order),
                         o.energy.real(), o.energy.imag(), o.trial.omega.real(), o.trial.omega.imag(), o.trial.x0.real(),
                         o.trial.x0.imag(), o.residual_norm, static_cast<long long>(o.iterations), o.curvature,
                         o.branch_tag, std::string("ok")});
        };
        auto fail = [&](double lambda, const std::exception& e) {
            ++r.convergence_failures;
            std::vector<Cell> row(r.table.columns.size());
            row[0] = lambda;
            row[1] = static_cast<long long>(n);
            row[2] = std::string("VPE");
            row[3] = static_cast<long long>(q.order);
            row.back() = short_message(e);
            r.table.add(std::move(row));
        };
        if (options.seeding == Seeding::FirstOrder) {
            for (double lambda : grid) {
                try {
                    emit(lambda, solve_vpe(f, lambda, options));
                } catch (const ConvergenceError& e) {
                    fail(lambda, e);
                } catch (const SingularExpansion& e) {
                    fail(lambda, e);
                }
            }
        } else {
            try {
                const auto results = continuation_sweep(f, grid, options);
                for (std::size_t i = 0; i < grid.size(); ++i) {
                    emit(grid[i], results[i]);
                }
            } catch (const ConvergenceError& e) {
                for (double lambda : grid) {
                    fail(lambda, e);
                }
            }
        }
    }
    return r;
}

Report wkb_rows(const WkbRequest& q)
{
    require_levels(q.levels);
    require_positive_grid(q.lambdas, "wkb");
    if (q.variational_order && (*q.variational_order < 1 || *q.variational_order % 2 == 0)) {
        throw ContractViolation("variational trial order must be odd and positive");
    }
    Report r;
    r.table.columns = {"lambda", "n", "method", "order", "eps_wkb", "im_E", "nonreal_part", "underflow", "status"};
    for (int n : q.levels) {
        std::optional<VpeEnergyFunction> f;
        if (q.variational_order) {
            f.emplace(energy_function(n, *q.variational_order));
        }
        for (double lambda : q.lambdas) {
            const WkbResult w = im_energy_wkb(lambda, n, q.order, q.omega);
            r.table.add({lambda, static_cast<long long>(n), std::string("WKB"), static_cast<long long>(q.order), w.eps0,
                         w.value(), 0.0, std::string(w.underflow ? "yes" : "no"), std::string("ok")});
            if (!f) {
                continue;
            }
            try {
                SweepOptions options;
                options.newton.omega = q.omega;
                const auto o = solve_vpe(*f, lambda, options);
                // Back to omega = 1: Omega / omega, x0 sqrt(omega), lambda / omega^{5/2}.
                const double unit = std::pow(q.omega, 2.5);
                const TrialPoint t{o.trial.omega / q.omega, o.trial.x0 * std::sqrt(q.omega)};
                const cplx v = q.omega * variational_wkb(lambda / unit, n, q.order, t, *q.variational_order);
                r.table.add({lambda, static_cast<long long>(n), std::string("VPE-WKB"), static_cast<long long>(q.order),
                             w.eps0, v.real(), v.imag(), std::string(w.underflow ? "yes" : "no"), std::string("ok")});
            } catch (const std::exception& e) {
                ++r.convergence_failures;
                r.table.add({lambda, static_cast<long long>(n), std::string("VPE-WKB"), static_cast<long long>(q.order),
                             w.eps0, std::monostate{}, std::monostate{}, std::string(w.underflow ? "yes" : "no"),
                             short_message(e)});
            }
        }
    }
    return r;
}

Report ccr_rows(const std::vector<int>& levels, const std::vector<double>& lambdas, const CcrConfig& config)
{
    require_levels(levels);
    config.validate();
    if (lambdas.empty()) {
        throw ContractViolation("ccr: empty lambda grid");
    }
    for (double l : lambdas) {
        if (!(l >= 0.0) || !std::isfinite(l)) {
            throw DomainError("ccr: lambda must be finite and non-negative");
        }
    }
    Report r;
    r.table.columns = {"lambda", "n", "method", "order", "re_E", "im_E", "theta_spread", "basis_spread",
                       "imag_spread", "extended_precision", "status"};
    for (int n : levels) {
        for (double lambda : lambdas) {
            try {
                const ResonanceResult res = find_resonance(lambda, n, config);
                if (!res.converged) {
                    ++r.convergence_failures;
                }
                r.table.add({lambda, static_cast<long long>(n), std::string("CCR"),
                             static_cast<long long>(res.basis_size), res.energy.real(), res.energy.imag(),
                             res.theta_spread, res.basis_spread, res.imag_spread,
                             std::string(res.extended_precision ? "yes" : "no"),
                             std::string(res.converged ? "ok" : "unconverged")});
            } catch (const ConvergenceError& e) {
                ++r.convergence_failures;
                r.table.add({lambda, static_cast<long long>(n), std::string("CCR"), std::monostate{}, std::monostate{},
                             std::monostate{}, std::monostate{}, std::monostate{}, std::monostate{}, std::monostate{},
                             short_message(e)});
            }
        }
    }
    return r;
}

Report table1(const std::vector<double>& lambda_filter, const std::vector<int>& level_filter, double vpe_tolerance)
{
    if (!(vpe_tolerance > 0.0)) {
        throw ContractViolation("table1: tolerance must be positive");
    }
    Report r;
    r.table.columns = {"lambda",      "n",           "re_E_CCR",    "im_E_CCR",    "re_E_VPE",     "im_E_VPE",
                       "abs_dE",      "re_ref_CCR",  "im_ref_CCR",  "re_ref_VPE",  "im_ref_VPE",   "rel_err_CCR",
                       "tol_CCR",     "rel_err_VPE", "tol_VPE",     "tol_dE",      "pass"};
    for (const auto& cell : table1_reference()) {
        if (!lambda_filter.empty() && !contains(lambda_filter, cell.lambda)) {
            continue;
        }
        if (!level_filter.empty() && std::find(level_filter.begin(), level_filter.end(), cell.n) == level_filter.end()) {
            continue;
        }
        ResonanceResult ccr;
        OptimizationResult vpe;
        try {
            ccr = find_resonance(cell.lambda, cell.n);
            vpe = solve_vpe(energy_function(cell.n, 7), cell.lambda);
        } catch (const ConvergenceError& e) {
            std::ostringstream os;
            os << e.what() << " (cell lambda = " << cell.lambda << ", n = " << cell.n << ")";
            throw ConvergenceError(os.str());
        }
        const double err_ccr = relative_error(ccr.energy, cell.ccr);
        const double err_vpe = relative_error(vpe.energy, cell.vpe);
        const double diff = std::abs(vpe.energy - ccr.energy);
        const std::optional<double> tol_diff =
            cell.n == 0 && cell.lambda == 1.0 ? std::optional<double>(1e-4) : std::nullopt;
        const bool pass = ccr.converged && err_ccr <= cell.ccr_tolerance && err_vpe <= vpe_tolerance &&
                          (!tol_diff || diff <= *tol_diff);
        if (!pass) {
            ++r.tolerance_misses;
        }
        r.table.add({cell.lambda, static_cast<long long>(cell.n), ccr.energy.real(), ccr.energy.imag(),
                     vpe.energy.real(), vpe.energy.imag(), diff, cell.ccr.real(), cell.ccr.imag(), cell.vpe.real(),
                     cell.vpe.imag(), err_ccr, cell.ccr_tolerance, err_vpe, vpe_tolerance, opt(tol_diff),
                     std::string(pass ? "yes" : "no")});
    }
    return r;
}

Report table2(const std::vector<int>& levels, int order, const std::vector<double>& ladder, double tolerance)
{
    require_levels(levels);
    if (order < 1 || order % 2 == 0) {
        throw ContractViolation("table2: order must be odd and positive");
    }
    Report r;
    r.table.columns = {"n",      "order", "re_kappa", "im_kappa", "spread", "re_ref", "im_ref",
                       "rel_err", "tol",   "pass",     "status"};
    for (int n : levels) {
        const bool has_ref = n < static_cast<int>(kappa_reference().size());
        const Cell re_ref = has_ref ? Cell(kappa_reference()[n].real()) : Cell(std::monostate{});
        const Cell im_ref = has_ref ? Cell(kappa_reference()[n].imag()) : Cell(std::monostate{});
        try {
            const auto k = strong_coupling_kappa(energy_function(n, order), ladder);
            std::optional<double> err;
            bool pass = true;
            if (has_ref) {
                err = relative_error(k.kappa, kappa_reference()[n]);
                pass = *err <= tolerance;
            }
            if (!pass) {
                ++r.tolerance_misses;
            }
            r.table.add({static_cast<long long>(n), static_cast<long long>(order), k.kappa.real(), k.kappa.imag(),
                         k.spread, re_ref, im_ref, opt(err), tolerance, std::string(pass ? "yes" : "no"),
                         std::string("ok")});
        } catch (const ConvergenceError& e) {
            ++r.convergence_failures;
            r.table.add({static_cast<long long>(n), static_cast<long long>(order), std::monostate{}, std::monostate{},
                         std::monostate{}, re_ref, im_ref, std::monostate{}, tolerance, std::string("no"),
                         short_message(e)});
        }
    }
    return r;
}

Report fig1(const std::vector<double>& lambdas, const std::vector<int>& orders)
{
    require_positive_grid(lambdas, "fig1");
    Report r;
    r.table.columns = {"lambda", "n", "method", "order", "re_E", "im_E", "status"};
    for (int order : orders) {
        if (order < 1 || order % 2 == 0) {
            throw ContractViolation("fig1: VPE orders must be odd and positive");
        }
        const VpeEnergyFunction f = energy_function(0, order);
        for (double lambda : lambdas) {
            try {
                const auto o = solve_vpe(f, lambda);
                r.table.add({lambda, 0LL, std::string("VPE"), static_cast<long long>(order), o.energy.real(),
                             o.energy.imag(), std::string("ok")});
            } catch (const std::exception& e) {
                r.table.add({lambda, 0LL, std::string("VPE"), static_cast<long long>(order), std::monostate{},
                             std::monostate{}, std::string("branch lost: ") + e.what()});
            }
        }
    }
    for (double lambda : lambdas) {
        try {
            const auto c = find_resonance(lambda, 0);
            r.table.add({lambda, 0LL, std::string("CCR"), static_cast<long long>(c.basis_size), c.energy.real(),
                         c.energy.imag(), std::string(c.converged ? "ok" : "unconverged")});
        } catch (const ConvergenceError& e) {
            r.table.add({lambda, 0LL, std::string("CCR"), std::monostate{}, std::monostate{}, std::monostate{},
                         short_message(e)});
        }
    }
    return r;
}

Report fig2(const std::vector<int>& levels, const std::vector<double>& lambdas, int vpe_order)
{
    require_levels(levels);
    require_positive_grid(lambdas, "fig2");
    Report r;
    r.table.columns = {"lambda", "n", "method", "order", "im_E", "eps_wkb", "ratio", "status"};
    for (int n : levels) {
        const int m = n == 0 ? 2 : 1;
        const int variational = n == 0 ? 5 : 3;
        const VpeEnergyFunction vpe = energy_function(n, vpe_order);
        const VpeEnergyFunction trial_f = energy_function(n, variational);
        auto add = [&](double lambda, const char* method, int order, std::optional<double> im, double eps,
                       const std::string& status) {
            const std::optional<double> ratio =
                im && eps > 0.0 ? std::optional<double>(*im / eps) : std::optional<double>();
            r.table.add({lambda, static_cast<long long>(n), std::string(method), static_cast<long long>(order), opt(im),
                         eps, opt(ratio), status});
        };
        for (double lambda : lambdas) {
            const double eps = eps_wkb(lambda, n);
            try {
                const auto c = find_resonance(lambda, n);
                add(lambda, "CCR", c.basis_size, c.energy.imag(), eps, c.converged ? "ok" : "unconverged");
            } catch (const ConvergenceError& e) {
                add(lambda, "CCR", 0, std::nullopt, eps, short_message(e));
            }
            try {
                add(lambda, "VPE", vpe_order, solve_vpe(vpe, lambda).energy.imag(), eps, "ok");
            } catch (const std::exception& e) {
                add(lambda, "VPE", vpe_order, std::nullopt, eps, short_message(e));
            }
            add(lambda, "WKB", m, im_energy_wkb(lambda, n, m).value(), eps, "ok");
            try {
                const auto t = solve_vpe(trial_f, lambda);
                const cplx v = variational_wkb(lambda, n, m, t.trial, variational);
                add(lambda, "VPE-WKB", variational, v.real(), eps, "ok");
            } catch (const std::exception& e) {
                add(lambda, "VPE-WKB", variational, std::nullopt, eps, short_message(e));
            }
        }
    }
    return r;
}

std::vector<double> default_fig1_grid()
{
    return parse_lambda_grid("0.1:0.5:41");
}

std::vector<double> default_fig2_grid()
{
    return parse_lambda_grid("0.05:0.5:19");
}

std::vector<double> default_kappa_ladder()
{
    return geometric_ladder(1e1, 1e4, 7);
}

} // namespace cubicvpe::report
