#pragma once

// Value-table reproduction: solver values next to the closed forms and the
// previously published bounds, exported as CSV or JSON with byte-stable
// output for a fixed configuration.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "toiso/board.hpp"
#include "toiso/solver.hpp"

namespace toiso {

struct TableRow {
    int n = 0;
    std::optional<int> cycle_solver;
    int cycle_formula = 0;
    std::optional<int> path_solver;
    int path_formula = 0;
    // Earlier published bounds for the cycle, kept as comparison columns.
    // Stored as exact rationals: 3(n-3)/16 and n/4.
    long long prior_lower_num = 0;
    static constexpr long long prior_lower_den = 16;
    long long prior_upper_num = 0;
    static constexpr long long prior_upper_den = 4;
    std::optional<bool> cycle_match;
    std::optional<bool> path_match;
};

inline std::vector<TableRow> build_table(int n_from, int n_to, bool formula_only,
                                         Solver* solver) {
    if (n_from < 1 || n_to < n_from)
        throw std::invalid_argument("table range must satisfy 1 <= from <= to");
    if (!formula_only && !solver)
        throw std::invalid_argument("a solver is required unless formula_only is set");
    std::vector<TableRow> rows;
    for (int n = n_from; n <= n_to; ++n) {
        TableRow r;
        r.n = n;
        FormulaValues f = formula_values(n);
        r.cycle_formula = f.u_cycle;
        r.path_formula = f.u_path;
        r.prior_lower_num = 3LL * (n - 3);
        r.prior_upper_num = n;
        if (!formula_only) {
            r.cycle_solver = n >= 3 ? std::optional<int>(solver->solve_cycle(n).value)
                                    : std::nullopt;
            r.path_solver = solver->solve_path(n).value;
            if (r.cycle_solver) r.cycle_match = *r.cycle_solver == r.cycle_formula;
            r.path_match = *r.path_solver == r.path_formula;
        }
        rows.push_back(r);
    }
    return rows;
}

namespace detail {

// Locale-free fixed-point rendering of num/den with 4 decimals.
inline std::string format_fixed4(long long num, long long den) {
    bool neg = (num < 0) != (den < 0);
    unsigned long long n = num < 0 ? -static_cast<unsigned long long>(num) : num;
    unsigned long long d = den < 0 ? -static_cast<unsigned long long>(den) : den;
    unsigned long long scaled = (n * 10000 + d / 2) / d;  // round half up
    std::string digits = std::to_string(scaled % 10000);
    digits.insert(digits.begin(), 4 - digits.size(), '0');
    std::string out = (neg && scaled != 0 ? "-" : "") + std::to_string(scaled / 10000) + "." + digits;
    return out;
}

inline std::string opt_int(const std::optional<int>& v) {
    return v ? std::to_string(*v) : std::string();
}

inline std::string opt_flag(const std::optional<bool>& v) {
    return v ? (*v ? "true" : "false") : std::string();
}

}  // namespace detail

constexpr const char* kTableSchema = "toiso-table-v1";

// UTF-8, LF line endings, '.' decimal separator, schema pinned in the
// leading comment.
inline void write_table_csv(std::ostream& out, const std::vector<TableRow>& rows) {
    out << "# schema: " << kTableSchema << "\n";
    out << "n,u_cycle_solver,u_cycle_formula,u_path_solver,u_path_formula,"
           "prior_lower_cycle,prior_upper_cycle,cycle_match,path_match\n";
    for (const TableRow& r : rows) {
        out << r.n << ',' << detail::opt_int(r.cycle_solver) << ',' << r.cycle_formula << ','
            << detail::opt_int(r.path_solver) << ',' << r.path_formula << ','
            << detail::format_fixed4(r.prior_lower_num, TableRow::prior_lower_den) << ','
            << detail::format_fixed4(r.prior_upper_num, TableRow::prior_upper_den) << ','
            << detail::opt_flag(r.cycle_match) << ',' << detail::opt_flag(r.path_match) << "\n";
    }
}

// Field-for-field mirror of the CSV schema.
inline void write_table_json(std::ostream& out, const std::vector<TableRow>& rows) {
    nlohmann::json doc;
    doc["schema"] = kTableSchema;
    doc["rows"] = nlohmann::json::array();
    for (const TableRow& r : rows) {
        nlohmann::json row;
        row["n"] = r.n;
        row["u_cycle_solver"] = r.cycle_solver ? nlohmann::json(*r.cycle_solver) : nlohmann::json();
        row["u_cycle_formula"] = r.cycle_formula;
        row["u_path_solver"] = r.path_solver ? nlohmann::json(*r.path_solver) : nlohmann::json();
        row["u_path_formula"] = r.path_formula;
        row["prior_lower_cycle"] =
            detail::format_fixed4(r.prior_lower_num, TableRow::prior_lower_den);
        row["prior_upper_cycle"] =
            detail::format_fixed4(r.prior_upper_num, TableRow::prior_upper_den);
        row["cycle_match"] = r.cycle_match ? nlohmann::json(*r.cycle_match) : nlohmann::json();
        row["path_match"] = r.path_match ? nlohmann::json(*r.path_match) : nlohmann::json();
        doc["rows"].push_back(std::move(row));
    }
    out << doc.dump(2) << "\n";
}

}  // namespace toiso
