#include "cliffcut/parser.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <sstream>
#include <unordered_map>

namespace cliffcut {

namespace {

const std::unordered_map<std::string, GateKind>& name_table() {
  static const std::unordered_map<std::string, GateKind> table = {
      {"id", GateKind::I},   {"x", GateKind::X},     {"y", GateKind::Y},
      {"z", GateKind::Z},    {"h", GateKind::H},     {"s", GateKind::S},
      {"sdg", GateKind::Sdg}, {"sx", GateKind::SqrtX}, {"cx", GateKind::CX},
      {"cz", GateKind::CZ},  {"swap", GateKind::Swap}, {"t", GateKind::T},
      {"tdg", GateKind::Tdg}, {"rz", GateKind::RZ},   {"rx", GateKind::RX},
      {"ry", GateKind::RY},
  };
  return table;
}

class Scanner {
public:
  explicit Scanner(const std::string& text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  bool eof() {
    skip_space();
    return pos_ >= text_.size();
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void expect(char c, const char* what) {
    skip_space();
    if (peek() != c) fail(std::string("expected '") + c + "' " + what);
    advance();
  }

  bool accept(char c) {
    skip_space();
    if (peek() == c) {
      advance();
      return true;
    }
    return false;
  }

  std::string identifier() {
    skip_space();
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      advance();
    }
    if (pos_ == start) fail("expected identifier");
    return text_.substr(start, pos_ - start);
  }

  uint64_t integer() {
    skip_space();
    size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
    if (pos_ == start) fail("expected integer");
    uint64_t v = 0;
    auto res = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (res.ec != std::errc()) fail("integer out of range");
    return v;
  }

  double number() {
    skip_space();
    size_t start = pos_;
    if (peek() == '+' || peek() == '-') advance();
    bool any = false;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
            text_[pos_] == 'e' || text_[pos_] == 'E' ||
            ((text_[pos_] == '+' || text_[pos_] == '-') &&
             (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E')))) {
      advance();
      any = true;
    }
    if (!any) fail("expected number");
    double v = 0;
    std::string tok = text_.substr(start, pos_ - start);
    try {
      size_t used = 0;
      v = std::stod(tok, &used);
      if (used != tok.size()) fail("malformed number '" + tok + "'");
    } catch (const std::exception&) {
      fail("malformed number '" + tok + "'");
    }
    return v;
  }

  // angle := number | [-]pi[/number] | number*pi
  double angle() {
    skip_space();
    double sign = 1.0;
    if (peek() == '-' && !starts_number()) {
      advance();
      sign = -1.0;
      skip_space();
    }
    double v;
    if (std::isalpha(static_cast<unsigned char>(peek()))) {
      auto word = identifier();
      if (word != "pi") fail("unknown angle token '" + word + "'");
      v = std::numbers::pi;
      if (accept('/')) v /= number();
    } else {
      v = number();
      if (accept('*')) {
        auto word = identifier();
        if (word != "pi") fail("unknown angle token '" + word + "'");
        v *= std::numbers::pi;
      }
    }
    return sign * v;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, col_, msg); }

private:
  bool starts_number() const {
    size_t p = pos_ + 1;
    while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
    return p < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[p])) || text_[p] == '.');
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

Circuit parse_circuit(const std::string& text) {
  Scanner sc(text);
  Circuit c;
  bool have_qreg = false;
  std::string reg_name;

  auto qubit_ref = [&]() -> uint32_t {
    auto name = sc.identifier();
    if (name != reg_name) sc.fail("unknown register '" + name + "'");
    sc.expect('[', "after register name");
    uint64_t idx = sc.integer();
    sc.expect(']', "after qubit index");
    if (idx >= c.n_qubits) sc.fail("qubit index " + std::to_string(idx) + " out of range");
    return static_cast<uint32_t>(idx);
  };

  while (!sc.eof()) {
    auto word = sc.identifier();
    if (word == "qreg") {
      if (have_qreg) sc.fail("duplicate qreg declaration");
      reg_name = sc.identifier();
      sc.expect('[', "after register name");
      uint64_t n = sc.integer();
      sc.expect(']', "after register size");
      sc.expect(';', "after statement");
      if (n == 0) sc.fail("register must hold at least one qubit");
      if (n > 100000) sc.fail("register size out of range");
      c.n_qubits = static_cast<uint32_t>(n);
      have_qreg = true;
      continue;
    }
    if (!have_qreg) sc.fail("qreg declaration must come first");
    if (word == "measure") {
      auto name = sc.identifier();
      if (name != reg_name) sc.fail("unknown register '" + name + "'");
      if (sc.accept('[')) {
        uint64_t idx = sc.integer();
        sc.expect(']', "after qubit index");
        if (idx >= c.n_qubits) sc.fail("qubit index " + std::to_string(idx) + " out of range");
        c.measured.insert(static_cast<uint32_t>(idx));
      } else {
        for (uint32_t q = 0; q < c.n_qubits; ++q) c.measured.insert(q);
      }
      sc.expect(';', "after statement");
      continue;
    }

    auto it = name_table().find(word);
    if (it == name_table().end()) sc.fail("unknown gate '" + word + "'");
    GateKind kind = it->second;

    Gate g{kind, 0, kNoQubit, 0.0};
    if (sc.accept('(')) {
      if (!is_rotation(kind)) sc.fail("gate '" + word + "' takes no angle");
      g.angle = normalize_angle(sc.angle());
      sc.expect(')', "after angle");
    } else if (is_rotation(kind)) {
      sc.fail("gate '" + word + "' requires an angle");
    }

    g.q0 = qubit_ref();
    if (sc.accept(',')) {
      if (!is_two_qubit(kind)) sc.fail("gate '" + word + "' takes one qubit");
      g.q1 = qubit_ref();
      if (g.q0 == g.q1) sc.fail("gate '" + word + "' needs two distinct qubits");
    } else if (is_two_qubit(kind)) {
      sc.fail("gate '" + word + "' takes two qubits");
    }
    sc.expect(';', "after statement");

    if (c.measured.count(g.q0) || (g.q1 != kNoQubit && c.measured.count(g.q1))) {
      sc.fail("gate on already-measured qubit (measurements are terminal)");
    }
    c.gates.push_back(g);
  }

  if (!have_qreg) throw ParseError(1, 1, "empty program: missing qreg declaration");
  return c;
}

std::string emit_circuit(const Circuit& c) {
  std::ostringstream out;
  out << "qreg q[" << c.n_qubits << "];\n";
  char buf[64];
  for (const auto& g : c.gates) {
    out << gate_name(g.kind);
    if (is_rotation(g.kind)) {
      std::snprintf(buf, sizeof buf, "%.17g", g.angle);
      out << '(' << buf << ')';
    }
    out << " q[" << g.q0 << ']';
    if (g.q1 != kNoQubit) out << ",q[" << g.q1 << ']';
    out << ";\n";
  }
  if (!c.measured.empty()) {
    if (c.measured.size() == c.n_qubits) {
      out << "measure q;\n";
    } else {
      for (uint32_t q : c.measured) out << "measure q[" << q << "];\n";
    }
  }
  return out.str();
}

}  // namespace cliffcut
