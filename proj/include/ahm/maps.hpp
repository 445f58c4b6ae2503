#pragma once

#include <optional>

#include "ahm/curvature.hpp"
#include "ahm/scalar_hessian.hpp"

namespace ahm {

using CoordinateMap = std::function<RVec(const RVec&)>;

struct AlmostHolomorphicMap {
    ManifoldChart source;
    ManifoldChart target;
    CoordinateMap f;
    bool declared_holomorphic = true;
};

namespace detail {

inline RMat map_jacobian(const AlmostHolomorphicMap& map, const RVec& p,
                         const DifferentiationScheme& scheme) {
    const int ns = map.source.dim();
    const int nt = map.target.dim();
    RMat J(nt, ns);
    const auto dom = map.source.domain_check();
    for (int a = 0; a < ns; ++a)
        J.col(a) = differentiate_field(map.f, p, a, scheme, dom);
    return J;
}

}  // namespace detail

// Operator norm of df o J - Jt o df between the two chart metrics.
inline double holomorphy_residual(const AlmostHolomorphicMap& map,
                                  const RVec& p,
                                  const DifferentiationScheme& scheme = {}) {
    const RVec q = map.f(p);
    if (!map.target.contains(q)) throw ImageOutOfTargetChart();
    const RMat df = detail::map_jacobian(map, p, scheme);
    const RMat M = df * map.source.acs(p) - map.target.acs(q) * df;
    const RMat G = map.source.metric(p);
    const RMat Gt = map.target.metric(q);
    Eigen::GeneralizedSelfAdjointEigenSolver<RMat> es(M.transpose() * Gt * M,
                                                      G);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

struct MapJet {
    RVec point;
    CMat f1;          // f^alpha_i, m_t x m_s
    Tensor3c f2;      // f^alpha_{ik}
    Tensor3c f2_bar;  // f^alpha_{i kbar}; ~0 for almost holomorphic maps
    RVec lambda_spectrum;
    CMat lambda_vectors;  // eigenvectors of the pullback form, frame basis
    double f2_bar_max = 0.0;
};

// Jet computations with the frame gauges frozen at a reference point and
// its image, so that first and second jets are smooth fields suitable for
// further finite differencing.
class MapJetEvaluator {
public:
    MapJetEvaluator(const AlmostHolomorphicMap& map, const RVec& p,
                    const DifferentiationScheme& scheme = {},
                    std::optional<FrameGauge> sgauge = {},
                    std::optional<FrameGauge> tgauge = {})
        : map_(map), p_(p), scheme_(scheme) {
        const RVec q = map.f(p);
        if (!map.target.contains(q)) throw ImageOutOfTargetChart();
        sgauge_ = sgauge ? *sgauge : make_gauge(map.source, p);
        tgauge_ = tgauge ? *tgauge : make_gauge(map.target, q);
        scf_ = unitary_coframe(map.source, p, sgauge_);
        tcf_ = unitary_coframe(map.target, q, tgauge_);
        sconn_ = canonical_connection(map.source, p, scf_, scheme);
        tconn_ = canonical_connection(map.target, q, tcf_, scheme);
        sforms_ = connection_one_forms(map.source, p, scf_, sgauge_,
                                       sconn_.table.gamma, scheme);
    }

    // f^alpha_i = thetat^alpha(df(e_i)) as a field near the base.
    CMat f1_field(const RVec& q) const {
        const auto scf = unitary_coframe(map_.source, q, sgauge_);
        const auto tcf = unitary_coframe(map_.target, map_.f(q), tgauge_);
        const RMat df = detail::map_jacobian(map_, q, scheme_);
        return tcf.theta * df.cast<Complex>() * scf.frame;
    }

    // thetahat^alpha_beta = f^* thetat^alpha_beta on a complexified source
    // vector v: thetat^alpha(nablat_{df(v)} et_beta).
    CMat pullback_forms(const CVec& v) const {
        const int nt = map_.target.dim();
        const int mt = map_.target.m;
        const RMat df = detail::map_jacobian(map_, p_, scheme_);
        const CVec w = df.cast<Complex>() * v;
        ensure_target_frame_derivatives();
        CMat out(mt, mt);
        for (int b = 0; b < mt; ++b) {
            CVec nab = CVec::Zero(nt);
            for (int c = 0; c < nt; ++c) {
                if (w(c) == Complex(0.0)) continue;
                nab += w(c) * (dTE_[c].col(b) +
                               tconn_.table.gamma[c].cast<Complex>() *
                                   tcf_.frame.col(b));
            }
            out.col(b) = tcf_.theta * nab;
        }
        return out;  // out(alpha, beta)
    }

    MapJet jet() const {
        const int ms = map_.source.m;
        const int mt = map_.target.m;
        const int ns = map_.source.dim();

        MapJet J;
        J.point = p_;
        J.f1 = f1_field(p_);

        std::vector<CMat> dF1(ns);
        const auto dom = map_.source.domain_check();
        for (int a = 0; a < ns; ++a)
            dF1[a] = differentiate_field(
                [this](const RVec& q) { return f1_field(q); }, p_, a, scheme_,
                dom);

        J.f2 = Tensor3c(mt, ms, ms);
        J.f2_bar = Tensor3c(mt, ms, ms);
        for (int k = 0; k < ms; ++k) {
            const CVec ek = scf_.frame.col(k);
            const CVec ekb = ek.conjugate();
            const CMat th_e = pullback_forms(ek);
            const CMat th_eb = pullback_forms(ekb);
            for (int al = 0; al < mt; ++al)
                for (int i = 0; i < ms; ++i) {
                    Complex de = 0.0, deb = 0.0;
                    for (int a = 0; a < ns; ++a) {
                        de += ek(a) * dF1[a](al, i);
                        deb += ekb(a) * dF1[a](al, i);
                    }
                    for (int j = 0; j < ms; ++j) {
                        de -= J.f1(al, j) * sforms_.on_e(j, i, k);
                        deb -= J.f1(al, j) * sforms_.on_ebar(j, i, k);
                    }
                    for (int be = 0; be < mt; ++be) {
                        de += J.f1(be, i) * th_e(al, be);
                        deb += J.f1(be, i) * th_eb(al, be);
                    }
                    J.f2(al, i, k) = de;
                    J.f2_bar(al, i, k) = deb;
                }
        }
        J.f2_bar_max = J.f2_bar.max_abs();

        const CMat M = J.f1.transpose() * J.f1.conjugate();
        const auto es = hermitian_eigen(M, 1e-8);
        J.lambda_spectrum = es.values;
        J.lambda_vectors = es.vectors;
        return J;
    }

    const UnitaryCoframe& source_coframe() const { return scf_; }
    const UnitaryCoframe& target_coframe() const { return tcf_; }
    const CanonicalConnection& source_connection() const { return sconn_; }
    const CanonicalConnection& target_connection() const { return tconn_; }
    const ConnectionForms& source_forms() const { return sforms_; }
    const FrameGauge& source_gauge() const { return sgauge_; }
    const FrameGauge& target_gauge() const { return tgauge_; }
    const AlmostHolomorphicMap& map() const { return map_; }
    const RVec& base() const { return p_; }

private:
    void ensure_target_frame_derivatives() const {
        if (!dTE_.empty()) return;
        const int nt = map_.target.dim();
        const RVec q = map_.f(p_);
        const auto domt = map_.target.domain_check();
        dTE_.resize(nt);
        for (int c = 0; c < nt; ++c)
            dTE_[c] = differentiate_field(
                [this](const RVec& y) {
                    return unitary_coframe(map_.target, y, tgauge_).frame;
                },
                q, c, scheme_, domt);
    }

    AlmostHolomorphicMap map_;
    RVec p_;
    DifferentiationScheme scheme_;
    FrameGauge sgauge_, tgauge_;
    UnitaryCoframe scf_, tcf_;
    CanonicalConnection sconn_, tconn_;
    ConnectionForms sforms_;
    mutable std::vector<CMat> dTE_;
};

inline MapJet map_jet(const AlmostHolomorphicMap& map, const RVec& p,
                      const DifferentiationScheme& scheme = {},
                      double holomorphy_tol = 1e-6) {
    if (holomorphy_residual(map, p, scheme) > holomorphy_tol)
        throw Error("map_jet: holomorphy residual above tolerance");
    return MapJetEvaluator(map, p, scheme).jet();
}

struct SchwarzSample {
    RVec point;
    double lambda_max = 0.0;
    double margin = 0.0;  // bound - lambda_max
};

struct SchwarzReport {
    double k1 = 0.0, k2 = 0.0, bound = 0.0;
    std::vector<SchwarzSample> samples;
    bool verdict = false;
    bool liouville_flag = false;
};

inline SchwarzReport schwarz_check(const AlmostHolomorphicMap& map, double k1,
                                   double k2, const std::vector<RVec>& samples,
                                   const DifferentiationScheme& scheme = {},
                                   double tol = 1e-3) {
    if (k2 <= 0.0) throw Error("schwarz_check: k2 must be positive");
    SchwarzReport rep;
    rep.k1 = k1;
    rep.k2 = k2;
    rep.bound = k1 / k2;
    rep.liouville_flag = k1 <= 1e-9;
    rep.verdict = true;
    double lambda_peak = 0.0;
    for (const auto& p : samples) {
        const auto jet = map_jet(map, p, scheme);
        SchwarzSample s;
        s.point = p;
        s.lambda_max = jet.lambda_spectrum(0);
        s.margin = rep.bound - s.lambda_max;
        lambda_peak = std::max(lambda_peak, s.lambda_max);
        if (s.margin < -tol) rep.verdict = false;
        rep.samples.push_back(std::move(s));
    }
    if (rep.liouville_flag) rep.verdict = lambda_peak <= 1e-6;
    return rep;
}

struct BochnerResult {
    double lambda_tilde = 0.0;
    double lhs = 0.0;  // (lambda_tilde)_{1 1bar}
    double rhs = 0.0;  // k2 lambda^2 - k1 lambda
    bool holds = false;
};

// Hessian-Bochner check at (an extremum of) lambda_tilde = ||df(eta_1)||^2
// for a smooth unitary frame field with eta_1(p) the top eigenvector of
// the pullback form.
inline BochnerResult bochner_check(const AlmostHolomorphicMap& map, double k1,
                                   double k2, const RVec& p,
                                   const DifferentiationScheme& scheme = {},
                                   double tol = 1e-3) {
    MapJetEvaluator ev(map, p, scheme);
    const auto jet = ev.jet();
    const int ms = map.source.m;
    if (ms >= 2 && jet.lambda_spectrum(0) - jet.lambda_spectrum(1) < 1e-8 &&
        jet.lambda_spectrum(0) > 1e-8)
        throw EigenvectorDegenerate();

    // constant unitary rotation placing eta_1 at the top eigenvector
    CMat U(ms, ms);
    {
        U.col(0) = jet.lambda_vectors.col(0);
        int fill = 1;
        for (int j = 0; j < ms && fill < ms; ++j) {
            CVec v = CVec::Zero(ms);
            v(j) = 1.0;
            for (int kcol = 0; kcol < fill; ++kcol)
                v -= (U.col(kcol).adjoint() * v)(0, 0) * U.col(kcol);
            if (v.norm() < 1e-8) continue;
            U.col(fill++) = v / v.norm();
        }
        if (fill != ms) throw FrameGaugeFailure();
    }

    const CVec eta_core = U.col(0);
    const auto& sgauge = ev.source_gauge();
    auto lambda_field = [&](const RVec& q) -> double {
        const auto scf = unitary_coframe(map.source, q, sgauge);
        const RMat df = detail::map_jacobian(map, q, scheme);
        const CVec w = df.cast<Complex>() * (scf.frame * eta_core);
        const CMat Gt = map.target.metric(map.f(q)).cast<Complex>();
        return (w.transpose() * Gt * w.conjugate())(0, 0).real();
    };

    const auto H = hessian_scalar(map.source, lambda_field, p,
                                  ev.source_connection().table.gamma,
                                  ev.source_coframe(), scheme);
    const Complex lhs = (U.adjoint() * H.cplx * U)(0, 0);

    BochnerResult out;
    out.lambda_tilde = jet.lambda_spectrum(0);
    out.lhs = lhs.real();
    out.rhs = k2 * out.lambda_tilde * out.lambda_tilde - k1 * out.lambda_tilde;
    out.holds = out.lhs >= out.rhs - tol;
    return out;
}

struct JetIdentityReport {
    double res_31 = 0.0;  // second-jet commutation against the torsions
    double mag_31 = 0.0;
    double res_38 = 0.0;  // mixed third jet against the curvatures
    double mag_38 = 0.0;
    double f2_bar_max = 0.0;
};

inline JetIdentityReport jet_commutation_check(
    const AlmostHolomorphicMap& map, const RVec& p,
    const DifferentiationScheme& scheme = {}) {
    MapJetEvaluator ev(map, p, scheme);
    const auto jet = ev.jet();
    const int ms = map.source.m;
    const int mt = map.target.m;
    const int ns = map.source.dim();

    JetIdentityReport rep;
    rep.f2_bar_max = jet.f2_bar_max;

    // f^a_{kl} = f^a_{lk} + sum_i f^a_i tau^i_{kl}
    //                     - sum_{b,g} f^b_k f^g_l tauhat^a_{bg}
    const auto& tau = ev.source_connection().torsion.t20;
    const auto& tauhat = ev.target_connection().torsion.t20;
    for (int al = 0; al < mt; ++al)
        for (int k = 0; k < ms; ++k)
            for (int l = 0; l < ms; ++l) {
                const Complex lhs = jet.f2(al, k, l);
                Complex rhs = jet.f2(al, l, k);
                for (int i = 0; i < ms; ++i)
                    rhs += jet.f1(al, i) * tau(i, k, l);
                for (int be = 0; be < mt; ++be)
                    for (int ga = 0; ga < mt; ++ga)
                        rhs -=
                            jet.f1(be, k) * jet.f1(ga, l) * tauhat(al, be, ga);
                rep.res_31 = std::max(rep.res_31, std::abs(lhs - rhs));
                rep.mag_31 = std::max(
                    rep.mag_31, std::max(std::abs(lhs), std::abs(rhs)));
            }

    // f^a_{l m nbar} = sum_j f^a_j R^j_{l m nbar}
    //                - sum_{b,g,d} Rhat^a_{b g dbar} f^b_l f^g_m conj(f^d_n)
    // The left side differentiates the second-jet field with the
    // covariant corrections of its three indices.
    const auto f2_flat = [&](const RVec& q) -> CMat {
        MapJetEvaluator evq(map, q, scheme, ev.source_gauge(),
                            ev.target_gauge());
        const auto jq = evq.jet();
        CMat flat(mt, ms * ms);
        for (int al = 0; al < mt; ++al)
            for (int l = 0; l < ms; ++l)
                for (int k = 0; k < ms; ++k)
                    flat(al, l * ms + k) = jq.f2(al, l, k);
        return flat;
    };
    std::vector<CMat> dF2(ns);
    const auto dom = map.source.domain_check();
    for (int a = 0; a < ns; ++a)
        dF2[a] = differentiate_field(f2_flat, p, a, scheme, dom);

    const auto& forms = ev.source_forms();
    const auto ccs = curvature(map.source, p, scheme);
    const auto cct = curvature(map.target, map.f(p), scheme);
    const CMat& E = ev.source_coframe().frame;

    for (int nn = 0; nn < ms; ++nn) {
        const CVec enb = E.col(nn).conjugate();
        const CMat th_eb = ev.pullback_forms(enb);
        for (int al = 0; al < mt; ++al)
            for (int l = 0; l < ms; ++l)
                for (int mm = 0; mm < ms; ++mm) {
                    Complex lhs = 0.0;
                    for (int a = 0; a < ns; ++a)
                        lhs += enb(a) * dF2[a](al, l * ms + mm);
                    for (int j = 0; j < ms; ++j) {
                        lhs -= jet.f2(al, l, j) * forms.on_ebar(j, mm, nn);
                        lhs -= jet.f2(al, j, mm) * forms.on_ebar(j, l, nn);
                    }
                    for (int be = 0; be < mt; ++be)
                        lhs += jet.f2(be, l, mm) * th_eb(al, be);

                    Complex rhs = 0.0;
                    for (int j = 0; j < ms; ++j)
                        rhs += jet.f1(al, j) * ccs.r11(l, j, mm, nn);
                    for (int be = 0; be < mt; ++be)
                        for (int ga = 0; ga < mt; ++ga)
                            for (int de = 0; de < mt; ++de)
                                rhs -= cct.r11(be, al, ga, de) *
                                       jet.f1(be, l) * jet.f1(ga, mm) *
                                       std::conj(jet.f1(de, nn));
                    rep.res_38 = std::max(rep.res_38, std::abs(lhs - rhs));
                    rep.mag_38 = std::max(
                        rep.mag_38, std::max(std::abs(lhs), std::abs(rhs)));
                }
    }
    return rep;
}

}  // namespace ahm
