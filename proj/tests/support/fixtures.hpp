#pragma once

#include "mcpoly/aifv.hpp"

namespace fixture {

inline mcpoly::aifv::SourceSpec abcd() {
  using mcpoly::Rational;
  return mcpoly::aifv::SourceSpec::make(
      {Rational(1, 2), Rational(1, 4), Rational(1, 8), Rational(1, 8)});
}

inline constexpr const char* kT0 = "C(M1#0(S0(M0#2)),M2#1(S0(S0(M0#3))))";
inline constexpr const char* kT1 = "C(S1(C(M0#1,M0#2)),M2#0(S0(S0(M0#3))))";
inline constexpr const char* kT2 = "M1#0(S0(S1(C(M0#1,C(M0#2,M0#3)))))";

/// The three-tree AIFV-3 code over {a, b, c, d}.
inline mcpoly::aifv::Code abcd_code() {
  using mcpoly::aifv::CodeTree;
  return mcpoly::aifv::Code{3, abcd(),
                            {CodeTree::parse(kT0, 0), CodeTree::parse(kT1, 1),
                             CodeTree::parse(kT2, 2)}};
}

}  // namespace fixture
