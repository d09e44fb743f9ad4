#include "sweep.hpp"

#include "phase.hpp"

namespace dhlab::detail {

double BankSpec::weight_sum() const {
    double s = 0.0, c = 0.0;
    for (double w : weight) {
        double y = w - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

void bank_set_step(const BankSpec& spec, BankState& state, DoubleDouble h) {
    const std::size_t n = spec.size();
    state.zr.assign(n, 0.0);
    state.zi.assign(n, 0.0);
    state.rr.resize(n);
    state.ri.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto r = unit_phasor(dd_mul(spec.freq[i], h));
        state.rr[i] = r.real();
        state.ri[i] = r.imag();
    }
}

void bank_sync(const BankSpec& spec, BankState& state, DoubleDouble alpha0) {
    const std::size_t n = spec.size();
    for (std::size_t i = 0; i < n; ++i) {
        auto z = unit_phasor(dd_mul(spec.freq[i], alpha0));
        state.zr[i] = spec.weight[i] * z.real();
        state.zi[i] = spec.weight[i] * z.imag();
    }
}

} // namespace dhlab::detail
