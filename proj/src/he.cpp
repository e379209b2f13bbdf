#include "kwlab/he.hpp"

namespace kwlab {

namespace {
template <typename F>
ScalarProfile jet_profile(F f) {
    return [f](Real y) { return jet2<Real>(f, y); };
}
}  // namespace

ScalarProfile he_a_profile() {
    return jet_profile([](const auto& y) { return he_a(y); });
}

ScalarProfile he_b_profile() {
    return jet_profile([](const auto& y) { return he_b(y); });
}

ScalarProfile he_alt_a_profile() {
    return jet_profile([](const auto& y) { return he_alt_a(y); });
}

ScalarProfile constant_profile(Real value) {
    return [value](Real) { return Jet2<Real>{value, 0, 0}; };
}

InvariantField scalar_field(std::string name, ScalarProfile a, ScalarProfile b) {
    return make_field(std::move(name), omega_multiple(std::move(a)), omega_multiple(std::move(b)));
}

InvariantField he_field() { return scalar_field("he", he_a_profile(), he_b_profile()); }

InvariantField he_alt_field() { return scalar_field("he-alt", he_alt_a_profile(), he_b_profile()); }

}  // namespace kwlab
