#pragma once

#include <stdexcept>
#include <string>

#include "frontend/problem.hpp"

namespace miniomt {

struct ParseError : std::runtime_error {
    int line;
    int col;
    ParseError(int line_, int col_, const std::string& msg)
        : std::runtime_error("parse error at " + std::to_string(line_) + ":" +
                             std::to_string(col_) + ": " + msg),
          line(line_),
          col(col_) {}
};

// Parses the SMT-LIB subset described in the README: (set-logic QF_LRA|QF_LIRA),
// (declare-const v Real|Int|Bool), (assert f), exactly one (minimize t) or
// (maximize t), optional (check-sat). Comments start with ';'. All asserts are
// conjoined and converted to CNF over interned atoms.
Problem parse_problem(const std::string& text, const std::string& name = "");

}  // namespace miniomt
