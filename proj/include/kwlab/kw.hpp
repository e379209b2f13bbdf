#pragma once

#include "kwlab/forms.hpp"

namespace kwlab {

/// Both Kapustin-Witten equations evaluated on jets of (A, phi).
template <typename T>
struct KwResidual {
    Form<T> first;   // F_A - phi^phi - *d_A phi
    Form<T> second;  // d_A * phi
};

template <typename T>
Form<T> curvature_form(const FormJet<T>& a, const Coframe<T>& frame) {
    return exterior_d(a, frame) + square(a.value);
}

template <typename T>
Form<T> covariant_d(const FormJet<T>& f, const Form<T>& a, const Coframe<T>& frame) {
    return exterior_d(f, frame) + bracket_wedge(a, f.value);
}

template <typename T>
KwResidual<T> kw_equations(const FormJet<T>& a, const FormJet<T>& phi, const Coframe<T>& frame,
                           const HodgeSigns& signs) {
    const Form<T> f = curvature_form(a, frame);
    const Form<T> da_phi = covariant_d(phi, a.value, frame);
    KwResidual<T> r;
    r.first = f - square(phi.value) - hodge(da_phi, signs);
    r.second = covariant_d(hodge(phi, signs), a.value, frame);
    return r;
}

}  // namespace kwlab
