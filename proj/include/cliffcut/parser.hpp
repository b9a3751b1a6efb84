#pragma once

#include <stdexcept>
#include <string>

#include "cliffcut/circuit.hpp"

namespace cliffcut {

struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(int line_, int col_, const std::string& what_)
      : std::runtime_error("parse error at " + std::to_string(line_) + ":" +
                           std::to_string(col_) + ": " + what_),
        line(line_),
        column(col_) {}
};

// Parses the circuit text format:
//   qreg q[N];            exactly once, before any gate
//   h q[0];               single-qubit gate
//   cx q[0],q[1];         two-qubit gate
//   rz(0.25) q[0];        rotation; angles in radians, `pi` accepted
//   measure q;            measure everything (or measure q[i]; per qubit)
//   // comment
// Statements are ';'-terminated; a gate on an already-measured qubit is an
// error (measurements are terminal).
Circuit parse_circuit(const std::string& text);

// Canonical text form; parse_circuit(emit_circuit(c)) == c.
std::string emit_circuit(const Circuit& c);

}  // namespace cliffcut
