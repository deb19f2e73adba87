#pragma once

#include <string>

#include "mpg/two_player.hpp"

namespace mpg {

// Machine-readable renderings. Key order is fixed and all rationals are
// canonical strings, so reports are byte-stable for a fixed input.
// Every document carries "schema": 1.
std::string solve_report_json(const SolveReport& rep);
std::string solve_report_text(const SolveReport& rep);

std::string oracle_report_json(const OracleReport& rep);
std::string oracle_report_text(const OracleReport& rep);

// Largest numerator/denominator bit length appearing in the report's
// eigenpair, value and trace. Coefficient-growth diagnostic for bench.
unsigned long report_bit_length(const SolveReport& rep);

}  // namespace mpg
