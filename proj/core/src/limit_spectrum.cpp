#include "contrast/limit_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <tuple>

#include "contrast/dispersion.hpp"

namespace contrast {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kAccumulationTol = 1e-8;  // lambda^+ truncation distance from q
// The lambda^+ tail thickens like q^2 r / mu near q, so reaching the 1e-8
// truncation by enumeration is not feasible for windows that contain q; the
// cap bounds the work and the achieved distance is recorded in the note.
constexpr int kEnumerationCap = 160;

void check_rect(const DomainSpec& d) {
    if (d.kind != DomainKind::BoundedRectangle)
        throw std::invalid_argument("limit spectrum: bounded-rectangle domain required");
    if (!(d.L_x > 0.0 && d.d_minus < 0.0 && d.d_plus > 0.0))
        throw std::invalid_argument("limit spectrum: invalid rectangle");
}

// k smallest of {(m pi / L)^2 + taus[j]}, m >= 1, taus ascending with
// taus.size() >= k. Streams j > k cannot contribute to the first k values.
std::vector<double> k_smallest_sums(const std::vector<double>& taus, double L, int k) {
    using Item = std::tuple<double, int, int>;  // (value, j, m)
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    const double base = (kPi / L) * (kPi / L);
    const int streams = std::min<int>(k, static_cast<int>(taus.size()));
    for (int j = 0; j < streams; ++j) heap.emplace(base + taus[j], j, 1);
    std::vector<double> out;
    out.reserve(k);
    while (static_cast<int>(out.size()) < k) {
        auto [v, j, m] = heap.top();
        heap.pop();
        out.push_back(v);
        const double mm = static_cast<double>(m + 1) * kPi / L;
        heap.emplace(mm * mm + taus[j], j, m + 1);
    }
    return out;
}

std::vector<std::pair<double, int>> group_points(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    std::vector<std::pair<double, int>> out;
    for (double v : values) {
        if (!out.empty() && std::abs(v - out.back().first) <= 1e-12 * (1.0 + std::abs(v)))
            ++out.back().second;
        else
            out.emplace_back(v, 1);
    }
    return out;
}

// Root of a monotone g over t in (0, inf), sign change assumed; geometric
// expansion to bracket, then bisection in log t to relative width 1e-13.
template <class F>
double monotone_branch_root(F&& g, bool decreasing) {
    double t_pos = 1.0, t_neg = 1.0;
    if (decreasing) {
        int guard = 0;
        while (!(g(t_pos) > 0.0)) {
            t_pos *= 1e-2;
            if (++guard > 160) throw BracketError("branch root: no positive side");
        }
        guard = 0;
        t_neg = std::max(1.0, t_pos * 4.0);
        while (!(g(t_neg) < 0.0)) {
            t_neg *= 8.0;
            if (t_neg > 1e30 || ++guard > 400) throw BracketError("branch root: no negative side");
        }
    } else {
        int guard = 0;
        while (!(g(t_neg) < 0.0)) {
            t_neg *= 1e-2;
            if (++guard > 160) throw BracketError("branch root: no negative side");
        }
        guard = 0;
        t_pos = std::max(1.0, t_neg * 4.0);
        while (!(g(t_pos) > 0.0)) {
            t_pos *= 8.0;
            if (t_pos > 1e30 || ++guard > 400) throw BracketError("branch root: no positive side");
        }
    }
    double lo = std::min(t_pos, t_neg);
    double hi = std::max(t_pos, t_neg);
    const bool lo_is_pos = decreasing;
    while (hi / lo > 1.0 + 1e-13) {
        const double mid = std::sqrt(lo * hi);
        if (mid <= lo || mid >= hi) break;
        const double gm = g(mid);
        const bool mid_pos = gm > 0.0;
        if (mid_pos == lo_is_pos)
            lo = mid;
        else
            hi = mid;
    }
    return std::sqrt(lo * hi);
}

struct PlusIntersection {
    double lambda;
    double mu;
};

// Intersection of the k-th eigenvalue curve with the mu > -qr branch.
PlusIntersection plus_intersection(double q, double r, const DomainSpec& domain, int k) {
    const double qr = q * r;
    auto g = [&](double t) { return rect_lambda_k_mu(-qr + t, domain, k) - (q - q * qr / t); };
    const double t = monotone_branch_root(g, /*decreasing=*/true);
    return {q - q * qr / t, -qr + t};
}

// Intersection of the k-th eigenvalue curve with the mu < -qr branch.
PlusIntersection minus_intersection(double q, double r, const DomainSpec& domain, int k) {
    const double qr = q * r;
    auto g = [&](double t) { return rect_lambda_k_mu(-qr - t, domain, k) - (q + q * qr / t); };
    const double t = monotone_branch_root(g, /*decreasing=*/false);
    return {q + q * qr / t, -qr - t};
}

// Strictly decreasing psi on (lo_limit, hi_pole): +inf at the left limit,
// -inf approaching the right end. A bracket that collapses onto an end means
// the root sits within the inset floor of it; that near-end value is
// returned (callers filter by window or by distance from q).
template <class F>
std::optional<double> decreasing_interval_root(F&& psi, double lo_limit, double hi_pole,
                                               double scale) {
    double hi = 0.0;
    {
        double inset = std::isfinite(lo_limit) ? 1e-3 * (hi_pole - lo_limit) : 1e-3 * (1.0 + std::abs(hi_pole));
        const double floor_inset = 1e-13 * (1.0 + std::abs(hi_pole));
        while (true) {
            hi = hi_pole - inset;
            if (std::isfinite(lo_limit) && hi <= lo_limit) {
                inset *= 1e-2;
                if (inset < floor_inset) return hi_pole - 0.5 * floor_inset;
                continue;
            }
            if (psi(hi) < 0.0) break;
            inset *= 1e-2;
            if (inset < floor_inset) return hi_pole - 0.5 * floor_inset;
        }
    }
    double lo = 0.0;
    if (!std::isfinite(lo_limit)) {
        lo = std::min(0.0, hi - 1.0);
        double step = 1.0 + std::abs(lo);
        while (!(psi(lo) > 0.0)) {
            lo -= step;
            step *= 2.0;
            if (!std::isfinite(lo)) throw BracketError("interval root: no left bracket");
        }
    } else {
        double inset = 1e-3 * (hi_pole - lo_limit);
        const double floor_inset = 1e-13 * (1.0 + std::abs(lo_limit));
        while (true) {
            lo = lo_limit + inset;
            if (lo >= hi) {
                inset *= 1e-2;
                if (inset < floor_inset) return lo_limit + 0.5 * floor_inset;
                continue;
            }
            if (psi(lo) > 0.0) break;
            inset *= 1e-2;
            if (inset < floor_inset) return lo_limit + 0.5 * floor_inset;
        }
    }
    double plo = psi(lo), phi_v = psi(hi);
    while (hi - lo > 1e-13 * (scale + std::abs(lo) + std::abs(hi))) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double pm = psi(mid);
        if (pm > 0.0) {
            lo = mid;
            plo = pm;
        } else {
            hi = mid;
            phi_v = pm;
        }
    }
    if (phi_v != plo) {
        const double sec = lo - plo * (hi - lo) / (phi_v - plo);
        if (sec > lo && sec < hi) return sec;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> SpectralSet::flatten() const {
    std::vector<double> out;
    for (const auto& [v, m] : points)
        for (int i = 0; i < m; ++i) out.push_back(v);
    out.insert(out.end(), essential.begin(), essential.end());
    std::sort(out.begin(), out.end());
    return out;
}

double coupling_curve(double mu, double q, double r) {
    if (!(q > 0.0) || !(r > 0.0)) throw std::invalid_argument("coupling_curve: q > 0, r > 0 required");
    if (mu == -q * r) throw std::invalid_argument("coupling_curve: mu at the pole -qr");
    return q * mu / (q * r + mu);
}

double mu_of_lambda(double lambda, double q, double r) {
    if (!(q > 0.0) || !(r > 0.0)) throw std::invalid_argument("mu_of_lambda: q > 0, r > 0 required");
    if (lambda == q) throw std::invalid_argument("mu_of_lambda: lambda at the pole q");
    return lambda * q * r / (q - lambda);
}

std::vector<double> rect_lambda_mu_list(double mu, const DomainSpec& domain, int k) {
    check_rect(domain);
    if (k < 1) throw std::invalid_argument("rect_lambda_mu_list: k >= 1 required");
    const auto taus = transversal_eigs({domain.d_minus, domain.d_plus, mu}, k);
    return k_smallest_sums(taus.eigenvalues, domain.L_x, k);
}

double rect_lambda_k_mu(double mu, const DomainSpec& domain, int k) {
    return rect_lambda_mu_list(mu, domain, k).back();
}

std::vector<double> rect_dirichlet_gamma_eigs(const DomainSpec& domain, int count) {
    check_rect(domain);
    if (count < 1) throw std::invalid_argument("rect_dirichlet_gamma_eigs: count >= 1 required");
    const double a = -domain.d_minus, b = domain.d_plus;
    std::vector<double> taus;
    taus.reserve(2 * count);
    for (int j = 1; j <= count; ++j) {
        taus.push_back((j * kPi / a) * (j * kPi / a));
        taus.push_back((j * kPi / b) * (j * kPi / b));
    }
    std::sort(taus.begin(), taus.end());
    taus.resize(count);
    return k_smallest_sums(taus, domain.L_x, count);
}

std::vector<double> rect_dirichlet_eigs(const DomainSpec& domain, int count) {
    check_rect(domain);
    if (count < 1) throw std::invalid_argument("rect_dirichlet_eigs: count >= 1 required");
    const double H = domain.height();
    std::vector<double> taus;
    taus.reserve(count);
    for (int j = 1; j <= count; ++j) taus.push_back((j * kPi / H) * (j * kPi / H));
    return k_smallest_sums(taus, domain.L_x, count);
}

K0Result k0_index(double q, const DomainSpec& domain) {
    check_rect(domain);
    if (!(q > 0.0) || !std::isfinite(q)) throw std::invalid_argument("k0_index: finite q > 0 required");
    int count = 16;
    std::vector<double> eigs = rect_dirichlet_gamma_eigs(domain, count);
    while (eigs.back() <= q) {
        count *= 2;
        eigs = rect_dirichlet_gamma_eigs(domain, count);
    }
    K0Result res;
    for (double v : eigs) {
        if (std::abs(v - q) <= 1e-10 * (1.0 + std::abs(q))) res.tie = true;
        if (v <= q) ++res.k0;
    }
    return res;
}

CurveIntersectionResult rect_point_spectrum(double q, double r, const DomainSpec& domain, int K) {
    return rect_point_spectrum(q, r, domain, K, K);
}

CurveIntersectionResult rect_point_spectrum(double q, double r, const DomainSpec& domain,
                                            int K_plus, int K_minus) {
    check_rect(domain);
    if (!(q > 0.0) || !std::isfinite(q) || !(r > 0.0))
        throw std::invalid_argument("rect_point_spectrum: 0 < q < inf and r > 0 required");
    if (K_plus < 1 || K_minus < 0) throw std::invalid_argument("rect_point_spectrum: bad branch counts");

    CurveIntersectionResult res;
    res.q = q;
    res.r = r;
    const auto k0 = k0_index(q, domain);
    res.k0 = k0.k0;
    res.k0_tie = k0.tie;

    for (int k = 1; k <= K_plus; ++k) {
        const auto p = plus_intersection(q, r, domain, k);
        res.lambda_plus.push_back(p.lambda);
        res.mu_plus.push_back(p.mu);
        if (std::abs(p.lambda) <= 1e-12 * (1.0 + q))
            res.zero_flagged_plus.push_back(k - 1);
    }
    for (int k = 1; k <= K_minus; ++k) {
        const auto m = minus_intersection(q, r, domain, res.k0 + k);
        res.lambda_minus.push_back(m.lambda);
        res.mu_minus.push_back(m.mu);
    }
    return res;
}

SpectralSet limit_spectrum_cases(double q, double r, const DomainSpec& domain, Interval window) {
    check_rect(domain);
    if (!(window.lo <= window.hi) || !std::isfinite(window.lo) || !std::isfinite(window.hi))
        throw std::invalid_argument("limit_spectrum_cases: bounded window required");
    if (!(q >= 0.0)) throw std::invalid_argument("limit_spectrum_cases: q >= 0 required");
    if (!(r >= 0.0) || !std::isfinite(r)) throw std::invalid_argument("limit_spectrum_cases: finite r >= 0 required");

    const bool q_finite = std::isfinite(q);

    auto dirichlet_in_window = [&](void) {
        std::vector<double> vals;
        int count = 32;
        while (true) {
            vals = rect_dirichlet_eigs(domain, count);
            if (vals.back() > window.hi) break;
            count *= 2;
        }
        std::vector<double> in;
        for (double v : vals)
            if (window.contains(v)) in.push_back(v);
        return in;
    };

    SpectralSet set;
    set.window = window;

    if (r == 0.0 || q == 0.0) {
        // direct-sum cases: sigma(-Delta) plus the point q (or 0)
        auto vals = dirichlet_in_window();
        set.points = group_points(std::move(vals));
        if (q_finite && window.contains(q)) set.essential.push_back(q);
        if (!q_finite) set.truncation_note = "pure Dirichlet spectrum (q = inf, r = 0)";
        else set.truncation_note = "direct-sum case; no accumulation";
        return set;
    }

    if (!q_finite) return steklov_spectrum(r, domain, window);

    // 0 < q < inf, r > 0: two sequences and the essential point q
    std::vector<double> vals;
    const double plus_cut = std::min(window.hi, q - kAccumulationTol);
    int enumerated = 0;
    double last_plus = -kInf;
    for (int k = 1; k <= kEnumerationCap; ++k) {
        const auto p = plus_intersection(q, r, domain, k);
        last_plus = p.lambda;
        if (p.lambda > plus_cut) break;
        ++enumerated;
        if (p.lambda >= window.lo) vals.push_back(p.lambda);
    }
    const auto k0 = k0_index(q, domain);
    for (int k = 1; k <= kEnumerationCap; ++k) {
        const auto m = minus_intersection(q, r, domain, k0.k0 + k);
        if (m.lambda > window.hi) break;
        if (m.lambda >= window.lo) vals.push_back(m.lambda);
        if (k == kEnumerationCap)
            throw std::runtime_error("limit_spectrum_cases: lambda- enumeration cap reached");
    }
    set.points = group_points(std::move(vals));
    if (window.contains(q)) set.essential.push_back(q);
    {
        char note[160];
        std::snprintf(note, sizeof(note),
                      "lambda+ enumerated to %d terms; truncated at distance %.3e from q",
                      enumerated, std::max(q - last_plus, 0.0));
        set.truncation_note = note;
    }
    return set;
}

SpectralSet steklov_spectrum(double r, const DomainSpec& domain, Interval window) {
    check_rect(domain);
    if (!(r > 0.0)) throw std::invalid_argument("steklov_spectrum: r > 0 required");
    if (!(window.lo <= window.hi)) throw std::invalid_argument("steklov_spectrum: bounded window required");

    const double L = domain.L_x;
    const double tau_min = alpha_of_mu(std::max(window.hi, 1.0) * r, domain.d_minus, domain.d_plus);

    std::vector<double> vals;
    for (int m = 1;; ++m) {
        const double theta = (m * kPi / L) * (m * kPi / L);
        if (theta + tau_min > window.hi) break;

        auto psi = [&](double lam) {
            return detail::dispersion_value_unchecked(lam - theta, domain.d_minus, domain.d_plus) - lam * r;
        };
        // one root per pole interval of the shifted transversal problem
        const auto poles = half_interval_poles(domain.d_minus, domain.d_plus, 0.0,
                                               std::max(window.hi - theta, 0.0) + 1.0);
        double prev = -kInf;
        for (std::size_t j = 0; j <= poles.size(); ++j) {
            const double p_lo = prev;
            const double p_hi = j < poles.size() ? theta + poles[j].value : window.hi + 1.0;
            if (std::isfinite(p_lo) && p_lo > window.hi) break;
            if (j == poles.size()) {
                // last, unbounded stretch: root only if psi still changes sign below window.hi
                if (psi(std::min(p_hi, window.hi)) < 0.0) {
                    auto root = decreasing_interval_root(psi, p_lo, std::min(p_hi, window.hi) + 1.0, 1.0 + theta);
                    if (root && *root <= window.hi && *root >= window.lo) vals.push_back(*root);
                }
                break;
            }
            auto root = decreasing_interval_root(psi, p_lo, p_hi, 1.0 + theta);
            if (root && *root >= window.lo && *root <= window.hi) vals.push_back(*root);
            if (poles[j].coincident()) {
                const double lam = theta + poles[j].value;
                if (lam >= window.lo && lam <= window.hi) vals.push_back(lam);
            }
            prev = p_hi;
        }
    }

    SpectralSet set;
    set.window = window;
    set.points = group_points(std::move(vals));
    set.truncation_note = "Steklov-type spectrum (q = inf); purely discrete";
    return set;
}

WaveguideLimit waveguide_limit(double q, double r, double d_minus, double d_plus) {
    if (!(q > 0.0) || !std::isfinite(q) || !(r > 0.0))
        throw std::invalid_argument("waveguide_limit: 0 < q < inf and r > 0 required");
    const double threshold = first_pole(d_minus, d_plus);
    if (std::abs(q - threshold) <= 1e-10 * (1.0 + q))
        throw ThresholdTieError("waveguide_limit: q ties the transversal threshold");

    WaveguideLimit wl;
    wl.q = q;
    wl.r = r;
    const double qr = q * r;

    {
        auto g = [&](double t) { return alpha_of_mu(-qr + t, d_minus, d_plus) - (q - q * qr / t); };
        const double t = monotone_branch_root(g, /*decreasing=*/true);
        wl.mu1 = -qr + t;
        wl.alpha1 = q - q * qr / t;
    }
    if (q < threshold) {
        auto g = [&](double t) { return alpha_of_mu(-qr - t, d_minus, d_plus) - (q + q * qr / t); };
        const double t = monotone_branch_root(g, /*decreasing=*/false);
        wl.mu2 = -qr - t;
        wl.alpha2 = q + q * qr / t;
        wl.gap = Interval{q, *wl.alpha2};
    }
    return wl;
}

std::vector<double> waveguide_limit_bands(double q, double r, double d_minus, double d_plus,
                                          double phi, int m_max, int count) {
    if (!(q > 0.0) || !std::isfinite(q) || !(r > 0.0))
        throw std::invalid_argument("waveguide_limit_bands: 0 < q < inf and r > 0 required");
    if (!(phi >= 0.0 && phi < 2.0 * kPi))
        throw std::invalid_argument("waveguide_limit_bands: phi in [0, 2 pi) required");
    if (m_max < 0 || count < 1) throw std::invalid_argument("waveguide_limit_bands: bad m_max/count");

    // generous pole window for `count` intervals
    const double len_min = std::min(-d_minus, d_plus);
    const double pole_hi = (count + 1) * (count + 1) * kPi * kPi / (len_min * len_min);
    const auto poles = half_interval_poles(d_minus, d_plus, 0.0, pole_hi);

    std::vector<double> vals;
    const double q_tol = 1e-12 * (1.0 + q);

    for (int m = -m_max; m <= m_max; ++m) {
        const double kx = phi + 2.0 * kPi * m;
        const double theta = kx * kx;
        auto psi = [&](double lam) {
            return detail::dispersion_value_unchecked(lam - theta, d_minus, d_plus) - lam * q * r / (q - lam);
        };
        double prev = -kInf;
        for (int j = 0; j < count && j < static_cast<int>(poles.size()); ++j) {
            const double lo = prev;
            const double hi = theta + poles[j].value;
            if (q > lo && q < hi) {
                if (auto root = decreasing_interval_root(psi, lo, q, 1.0 + theta))
                    if (std::abs(*root - q) > q_tol) vals.push_back(*root);
                if (auto root = decreasing_interval_root(psi, q, hi, 1.0 + theta))
                    if (std::abs(*root - q) > q_tol) vals.push_back(*root);
            } else {
                if (auto root = decreasing_interval_root(psi, lo, hi, 1.0 + theta))
                    if (std::abs(*root - q) > q_tol) vals.push_back(*root);
            }
            if (poles[j].coincident()) {
                const double lam = theta + poles[j].value;
                if (std::abs(lam - q) > q_tol) vals.push_back(lam);
            }
            prev = hi;
        }
    }
    std::sort(vals.begin(), vals.end());
    return vals;
}

}  // namespace contrast
