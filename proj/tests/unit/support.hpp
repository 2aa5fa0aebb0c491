#pragma once

#include <string>

#include "tmdyn/goedel.hpp"
#include "tmdyn/gshift.hpp"
#include "tmdyn/io.hpp"
#include "tmdyn/machine.hpp"

namespace tmdyn::testing {

inline const char* const kEraseSpec =
    "# erase a block of 1s\n"
    "blank _\n"
    "symbols _ 1\n"
    "states q0 q1\n"
    "initial q0\n"
    "final q1\n"
    "rule q0 1 -> q0 _ R\n"
    "rule q0 _ -> q1 _ S\n";

inline TuringMachine erase() { return parse_tm(kEraseSpec); }

inline TuringMachine machine_file(const std::string& name) {
  return parse_tm(read_file(std::string(TMDYN_MACHINE_DIR) + "/" + name));
}

inline Rational q(long n, long d = 1) { return Rational(n, d); }

inline Interval iv(Rational lo, Rational hi) { return Interval(std::move(lo), std::move(hi)); }

inline Rect rect(Rational x0, Rational x1, Rational y0, Rational y1) {
  return Rect(Interval(std::move(x0), std::move(x1)), Interval(std::move(y0), std::move(y1)));
}

/// Dotted sequence from space-separated names, e.g. dotted(m, "1", "q0 _").
inline DottedSequence dotted(const TuringMachine& m, const std::string& left_rev, const std::string& right) {
  DottedSequence s;
  std::size_t pos = 0;
  const auto next_token = [](const std::string& text, std::size_t& at) {
    while (at < text.size() && text[at] == ' ') ++at;
    const std::size_t start = at;
    while (at < text.size() && text[at] != ' ') ++at;
    return text.substr(start, at - start);
  };
  for (std::string t; !(t = next_token(left_rev, pos)).empty();) s.left_rev.push_back(*m.find_symbol(t));
  pos = 0;
  for (std::string t; !(t = next_token(right, pos)).empty();) {
    if (auto st = m.find_state(t)) {
      s.right.push_back(*st);
    } else {
      s.right.push_back(*m.find_symbol(t));
    }
  }
  return s;
}

}  // namespace tmdyn::testing
