#pragma once

// Row assembly and serialisation behind the command-line verbs. Every builder
// is deterministic in its arguments and returns a table plus counters the
// caller maps onto exit codes.

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cubicvpe/ccr.hpp"
#include "cubicvpe/vpe.hpp"

namespace cubicvpe::report {

/// Empty cells (std::monostate) mark values that do not apply to a row.
using Cell = std::variant<std::monostate, long long, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
    std::size_t column(const std::string& name) const; // throws ContractViolation if absent
};

struct Report {
    Table table;
    int convergence_failures = 0; // exit code 3
    int tolerance_misses = 0;     // exit code 4
};

/// 9 significant digits, '.' decimal point, "nan" / "inf" / "-inf".
std::string format_number(double x);
std::string format_cell(const Cell& c);

void write_csv(std::ostream& out, const Table& t);
/// Array of objects keyed by column; numbers carry the same 9 digits as CSV,
/// empty cells become null.
void write_json(std::ostream& out, const Table& t);

/// Inverse of write_csv: integers, then doubles, else strings; empty -> monostate.
Table read_csv(std::istream& in);

/// "0.5", "0.1,0.2,1", or "start:stop:count" (count >= 2, endpoints included).
std::vector<double> parse_lambda_grid(const std::string& text);
/// "0,2,4" or "first:last" (inclusive); values must be non-negative.
std::vector<int> parse_levels(const std::string& text);

Report rs_listing(const std::vector<int>& levels, int order);

struct VpeRequest {
    std::vector<int> levels{0};
    std::vector<double> lambdas;
    int order = 7;
    double omega = 1.0;
    SweepOptions sweep{};
};
Report vpe_rows(const VpeRequest& request);

struct WkbRequest {
    std::vector<int> levels{0};
    std::vector<double> lambdas;
    int order = 1;                       // m
    std::optional<int> variational_order; // adds VPE-WKB rows with an N-th order trial
    double omega = 1.0;
};
Report wkb_rows(const WkbRequest& request);

Report ccr_rows(const std::vector<int>& levels, const std::vector<double>& lambdas, const CcrConfig& config);

/// The nine reference cells, optionally filtered by lambda and n. The VPE
/// column must match its reference to `vpe_tolerance` (relative); the CCR
/// column to 1e-6 (1e-3 for the four-digit lambda = 50 cell); |E_VPE - E_CCR|
/// to 1e-4 at (lambda = 1, n = 0).
Report table1(const std::vector<double>& lambda_filter, const std::vector<int>& level_filter,
              double vpe_tolerance = 1e-3);

/// kappa = lim E / lambda^{2/5} per level from an order-N ladder, compared with
/// the reference values to `tolerance` (relative).
Report table2(const std::vector<int>& levels, int order, const std::vector<double>& ladder, double tolerance = 1e-3);

/// Im E of the ground state at VPE orders 1, 3, 5, 7 plus CCR.
Report fig1(const std::vector<double>& lambdas, const std::vector<int>& orders);

/// Im E / eps_WKB for CCR, VPE (order vpe_order), plain WKB (m = 1; 2 for n = 0)
/// and variational WKB (expansion order 3; 5 for n = 0).
Report fig2(const std::vector<int>& levels, const std::vector<double>& lambdas, int vpe_order = 7);

std::vector<double> default_fig1_grid();
std::vector<double> default_fig2_grid();
std::vector<double> default_kappa_ladder();

} // namespace cubicvpe::report
