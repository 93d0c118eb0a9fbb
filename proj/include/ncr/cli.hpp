#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ncr/bits.hpp"
#include "ncr/measure.hpp"

namespace ncr {

// Runs one CLI command. Exit codes: 0 success, 1 a verification/claim check
// failed, 2 usage or parse error. All normal output goes to `out`,
// warnings and error messages to `err`.
int cli_run(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

// Stream mini-grammar: "zeros" | "ones" | "alt" | "periodic:BITS" |
// "file:PATH" (raw 0/1 text; the last bit repeats past EOF, with a warning
// to `warn` when given).
BitStream streamspec_parse(const std::string& spec, std::ostream* warn);

// Measure mini-grammar: "lebesgue" | "bernoulli:P" (P a dyadic, "m/2^k") |
// inline JSON | a path to a JSON file.
MeasurePtr measurespec_parse(const std::string& spec);

// Modulus mini-grammar: "poly:D" | "exp" | "table:V1,V2,..." | inline JSON
// | a path to a JSON file.
ModulusFunction modulusspec_parse(const std::string& spec);

}  // namespace ncr
