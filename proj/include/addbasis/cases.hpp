// The eight target property combinations and their derived selection
// parameters: size function phi, floor function psi, mechanism mode, and
// which constructed set plays the role of the final basis.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace addbasis {

struct CaseSpec {
  bool p1 = true, p2 = true, p3 = false;

  enum class Phi { identity, const2, const1 };
  enum class Psi { const1, identity };
  enum class Mode { decomposable, indecomposable, indecomposable_special };
  enum class AChoice { union_bc, b_only };

  Phi phi_kind() const {
    if (p1) return Phi::identity;
    return p2 ? Phi::const2 : Phi::const1;
  }
  Psi psi_kind() const { return p3 ? Psi::const1 : Psi::identity; }
  Mode mode() const {
    if (p2) return Mode::decomposable;
    if (!p1 && p3) return Mode::indecomposable_special;
    return Mode::indecomposable;
  }
  AChoice a_choice() const { return p2 ? AChoice::union_bc : AChoice::b_only; }

  uint64_t phi(uint64_t k) const {
    switch (phi_kind()) {
      case Phi::identity: return k;
      case Phi::const2: return 2;
      default: return 1;
    }
  }
  uint64_t psi(uint64_t k) const {
    return psi_kind() == Psi::const1 ? 1 : k;
  }

  std::string name() const {
    std::string s;
    s += p1 ? 'T' : 'F';
    s += p2 ? 'T' : 'F';
    s += p3 ? 'T' : 'F';
    return s;
  }

  static CaseSpec from_name(const std::string& name) {
    if (name.size() != 3) throw std::invalid_argument("case name: want e.g. TTF");
    CaseSpec c;
    bool* flags[3] = {&c.p1, &c.p2, &c.p3};
    for (int i = 0; i < 3; ++i) {
      const char ch = name[i];
      if (ch == 'T' || ch == 't')
        *flags[i] = true;
      else if (ch == 'F' || ch == 'f')
        *flags[i] = false;
      else
        throw std::invalid_argument("case name: letters must be T or F");
    }
    return c;
  }
};

inline const char* kAllCaseNames[8] = {"TTF", "FTF", "TTT", "FTT",
                                       "TFF", "FFF", "TFT", "FFT"};

}  // namespace addbasis
