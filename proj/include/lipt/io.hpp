#ifndef LIPT_IO_HPP
#define LIPT_IO_HPP

#include <string>

#include "lipt/boolfn.hpp"
#include "lipt/systems.hpp"

namespace lipt {

/// ANF grammar: terms joined by '+', each term either '1', '0', or factors
/// 'x<i>' joined by '*' (variables 1-indexed, <= n). Whitespace insensitive.
/// Syntax errors report the offending position.
BooleanFunction parse_anf(const std::string& text, int n);

/// Monomial masks of an ANF, for round-trip checks: bit i of a mask selects
/// variable x_{i+1}.
std::string anf_to_string(const BooleanFunction& f);

/// Truth-table file format:
///   line 1: n=<int>
///   line 2: hex string of ceil(2^n/4) digits, the table read as the integer
///           sum f(i) 2^i written most-significant nibble first; within a
///           nibble bit j is f at point 4*nibble_index + j.
std::string write_table(const BooleanFunction& f);
BooleanFunction parse_table(const std::string& text);

/// Function sources for the CLI: "const0", "const1", "hyperplane:<bits>",
/// "bent", "random:<seed>:<density>", "anf:<expr>", "table:<path>" (path
/// resolution is the caller's job: use parse_table for file contents).
BooleanFunction parse_function_source(const std::string& source, int n);

/// {"rows": ["110", ...], "sigma": "10..."} -> validated system.
/// Degeneracies are reported via the returned ValidationResult.
ValidationResult parse_system_json(const std::string& json_text);

/// {"systems": [...], "generators": [{"name":"rm","d":1,"max_k":16}]} or the
/// shorthand "rm:<d>".
Family parse_family(const std::string& text);

} // namespace lipt

#endif
