#include "scscc/siso_bcjr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace scscc {

namespace {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

inline double clamp_llr(double v) {
    return std::clamp(v, -llr_clamp, llr_clamp);
}

// log(e^a + e^b); exact up to double rounding
inline double jac_exact(double a, double b) {
    const double m = a > b ? a : b;
    if (m == neg_inf)
        return neg_inf;
    const double d = m - (a > b ? b : a);
    if (d > 40.0)
        return m; // log1p(exp(-40)) ~ 4e-18, below double rounding of m
    return m + std::log1p(std::exp(-d));
}

inline double jac_max(double a, double b) {
    return a > b ? a : b;
}

void check_finite(const std::vector<double>& v, const char* what) {
    for (double x : v)
        if (std::isnan(x))
            throw std::invalid_argument(std::string("NaN in ") + what);
}

} // namespace

StateDistribution StateDistribution::uniform(int num_states) {
    StateDistribution d;
    d.log_p.assign(size_t(num_states), 0.0);
    return d;
}

StateDistribution StateDistribution::one_hot(int num_states, int state) {
    StateDistribution d;
    d.log_p.assign(size_t(num_states), neg_inf);
    d.log_p.at(size_t(state)) = 0.0;
    return d;
}

void StateDistribution::normalize() {
    double m = neg_inf;
    for (double x : log_p)
        m = std::max(m, x);
    if (m == neg_inf)
        throw std::invalid_argument("state distribution has no reachable state");
    for (double& x : log_p)
        x -= m;
}

BcjrEngine::BcjrEngine(const Trellis& trellis) : trellis_(trellis) {}

namespace {

template <bool Exact>
void run_impl(const Trellis& tr, const SisoInput& in, const BcjrOptions& opts,
              std::vector<double>& alpha, std::vector<double>& beta, BcjrResult& out) {
    const size_t n = in.systematic_llrs.size();
    const size_t ns = size_t(tr.num_states);
    auto jac = [](double a, double b) { return Exact ? jac_exact(a, b) : jac_max(a, b); };

    alpha.assign((n + 1) * ns, 0.0);
    beta.assign(2 * ns, 0.0);

    std::copy(in.alpha0.log_p.begin(), in.alpha0.log_p.end(), alpha.begin());

    out.extrinsic.resize(n);
    out.posterior.resize(n);
    out.parity_extrinsic.resize(n);
    out.parity_posterior.resize(n);
    out.alpha_tap.log_p.clear();

    // forward
    for (size_t k = 0; k < n; ++k) {
        const double lin = clamp_llr(in.systematic_llrs[k]) + clamp_llr(in.prior_in[k]);
        const double gin1 = -lin;
        const double gp1 = -clamp_llr(in.parity_llrs[k]);
        const double* a = &alpha[k * ns];
        double* an = &alpha[(k + 1) * ns];
        double mx = neg_inf;
        for (size_t sp = 0; sp < ns; ++sp) {
            double acc = neg_inf;
            for (int b = 0; b < 2; ++b) {
                const int ps = tr.prev_state[sp][b];
                double e = a[ps];
                if (b)
                    e += gin1;
                if (tr.parity_out[size_t(ps) * 2 + b])
                    e += gp1;
                acc = jac(acc, e);
            }
            an[sp] = acc;
            mx = std::max(mx, acc);
        }
        for (size_t sp = 0; sp < ns; ++sp)
            an[sp] -= mx;
    }

    if (opts.alpha_tap_index >= 0) {
        const size_t tap = size_t(opts.alpha_tap_index);
        if (tap > n)
            throw std::invalid_argument("alpha tap out of range");
        out.alpha_tap.log_p.assign(alpha.begin() + tap * ns, alpha.begin() + (tap + 1) * ns);
    }

    // backward, emitting bit posteriors along the way
    double* bcur = &beta[0];
    double* bnext = &beta[ns];
    std::copy(in.betaN.log_p.begin(), in.betaN.log_p.end(), bnext);
    for (size_t k = n; k-- > 0;) {
        const double lin = clamp_llr(in.systematic_llrs[k]) + clamp_llr(in.prior_in[k]);
        const double gin1 = -lin;
        const double lp = clamp_llr(in.parity_llrs[k]);
        const double gp1 = -lp;
        const double* a = &alpha[k * ns];
        double full0 = neg_inf, full1 = neg_inf;
        double pfull0 = neg_inf, pfull1 = neg_inf;
        double mx = neg_inf;
        for (size_t s = 0; s < ns; ++s) {
            double acc = neg_inf;
            for (int b = 0; b < 2; ++b) {
                const int nxt = tr.next_state[s * 2 + b];
                const int p = tr.parity_out[s * 2 + b];
                double e = bnext[nxt];
                if (b)
                    e += gin1;
                if (p)
                    e += gp1;
                acc = jac(acc, e);
                const double m = a[s] + e;
                if (b)
                    full1 = jac(full1, m);
                else
                    full0 = jac(full0, m);
                if (opts.parity_outputs) {
                    if (p)
                        pfull1 = jac(pfull1, m);
                    else
                        pfull0 = jac(pfull0, m);
                }
            }
            bcur[s] = acc;
            mx = std::max(mx, acc);
        }
        for (size_t s = 0; s < ns; ++s)
            bcur[s] -= mx;
        out.posterior[k] = full0 - full1;
        out.extrinsic[k] = out.posterior[k] - lin;
        if (opts.parity_outputs) {
            out.parity_posterior[k] = pfull0 - pfull1;
            out.parity_extrinsic[k] = out.parity_posterior[k] - lp;
        }
        std::swap(bcur, bnext);
    }

    out.alpha_final.log_p.assign(alpha.end() - long(ns), alpha.end());
    out.alpha_final.normalize();
    out.beta_initial.log_p.assign(bnext, bnext + ns);
    out.beta_initial.normalize();
    if (!opts.parity_outputs) {
        out.parity_extrinsic.clear();
        out.parity_posterior.clear();
    }
}

} // namespace

void BcjrEngine::run(const SisoInput& in, const BcjrOptions& opts, BcjrResult& out) {
    const size_t n = in.systematic_llrs.size();
    if (in.parity_llrs.size() != n || in.prior_in.size() != n)
        throw std::invalid_argument("siso input length mismatch");
    if (n == 0)
        throw std::invalid_argument("siso input is empty");
    if (in.alpha0.log_p.size() != size_t(trellis_.num_states) ||
        in.betaN.log_p.size() != size_t(trellis_.num_states))
        throw std::invalid_argument("boundary distribution has wrong number of states");
    check_finite(in.systematic_llrs, "systematic llrs");
    check_finite(in.parity_llrs, "parity llrs");
    check_finite(in.prior_in, "prior llrs");

    if (opts.metric == BcjrMetric::exact)
        run_impl<true>(trellis_, in, opts, alpha_, beta_, out);
    else
        run_impl<false>(trellis_, in, opts, alpha_, beta_, out);
}

BcjrResult bcjr(const Trellis& trellis, const SisoInput& in, const BcjrOptions& opts) {
    BcjrEngine engine(trellis);
    BcjrResult out;
    engine.run(in, opts, out);
    return out;
}

} // namespace scscc
