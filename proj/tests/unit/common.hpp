#ifndef PRIMFORM_TESTS_UNIT_COMMON_HPP
#define PRIMFORM_TESTS_UNIT_COMMON_HPP

#include <memory>
#include <string>
#include <vector>

#include "primform/errors.hpp"
#include "primform/parse.hpp"
#include "primform/singularity.hpp"

namespace testing {

inline std::shared_ptr<primform::SingularityData> make(const std::vector<std::string>& names, const std::string& f,
                                                       std::vector<primform::Rat> w,
                                                       const primform::AnalyzeOptions& opts = {}) {
  auto vars = primform::VariableSet::make(names);
  return std::make_shared<primform::SingularityData>(primform::analyze_singularity(
      primform::parse_polynomial(f, vars), primform::WeightSystem(std::move(w)), opts));
}

inline std::shared_ptr<primform::SingularityData> e12() {
  return make({"x", "y"}, "x^3 + y^7", {primform::Rat(1, 3), primform::Rat(1, 7)});
}

inline std::shared_ptr<primform::SingularityData> p8() {
  using primform::Rat;
  return make({"z1", "z2", "z3"}, "1/3*z1^3 + 1/3*z2^3 + 1/3*z3^3", {Rat(1, 3), Rat(1, 3), Rat(1, 3)});
}

inline std::shared_ptr<primform::SingularityData> a_m(int m) {
  return make({"z"}, "z^" + std::to_string(m + 1), {primform::Rat(1, m + 1)});
}

template <class F>
primform::ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const primform::Error& e) {
    return e.code();
  }
  return static_cast<primform::ErrorCode>(-1);
}

}  // namespace testing

#endif  // PRIMFORM_TESTS_UNIT_COMMON_HPP
