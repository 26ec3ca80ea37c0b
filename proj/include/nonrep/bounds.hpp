#ifndef NONREP_BOUNDS_HPP
#define NONREP_BOUNDS_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "nonrep/engine.hpp"
#include "nonrep/error.hpp"

namespace nonrep {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using BigFloat = boost::multiprecision::cpp_bin_float_100;

// Desk-scale enumeration caps.
inline constexpr int kDyckEnumerationCap = 12;
inline constexpr int kSpreadLengthCap = 14;
inline constexpr long long kSpreadBudget = 100000000;

// --- Square-free ternary words ---

// Iterates the substitution 1 -> 12312, 2 -> 131232, 3 -> 1323132 starting
// from "1" until the word has length at least n. Prefixes are square-free.
inline std::vector<int> thue_word(long n) {
    if (n < 1) throw InputError("thue_word: n must be >= 1");
    static const std::vector<std::vector<int>> image = {
        {1, 2, 3, 1, 2}, {1, 3, 1, 2, 3, 2}, {1, 3, 2, 3, 1, 3, 2}};
    std::vector<int> w{1};
    while (static_cast<long>(w.size()) < n) {
        std::vector<int> next;
        next.reserve(w.size() * 7);
        for (int s : w) {
            const auto& img = image[static_cast<std::size_t>(s - 1)];
            next.insert(next.end(), img.begin(), img.end());
        }
        w = std::move(next);
    }
    return w;
}

namespace detail {

inline Rat rat_pow(const Rat& x, unsigned n) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    return Rat(boost::multiprecision::pow(numerator(x), n), boost::multiprecision::pow(denominator(x), n));
}

// ceil(log2(v)) for v >= 1, exact.
inline long ceil_log2(const BigInt& v) {
    if (v <= 0) throw InputError("ceil_log2: positive argument required");
    if (v == 1) return 0;
    BigInt x = v - 1;
    return static_cast<long>(boost::multiprecision::msb(x)) + 1;
}

} // namespace detail

// ceil(c * log2(r)), computed exactly as ceil(log2(r^c)).
inline long spread_demand(long r, long c) {
    if (r < 1 || c < 1) throw InputError("spread_demand: positive arguments required");
    BigInt p = boost::multiprecision::pow(BigInt(r), static_cast<unsigned>(c));
    return detail::ceil_log2(p);
}

// A positive sequence is c-spread when every entry >= 2 can reserve
// ceil(c log2 s_i) ones, contiguous and immediately on one side of it, with
// no one serving two entries. Reservations only compete inside a shared run
// of ones, so feasibility reduces to a two-state scan over the big entries.
inline bool is_c_spread(const std::vector<int>& s, long c) {
    for (int e : s)
        if (e < 1) throw InputError("is_c_spread: entries must be positive");
    std::vector<long> demand;      // per big entry
    std::vector<long> run;         // run[i] = ones between big i-1 and big i
    long current = 0;
    for (int e : s) {
        if (e == 1) {
            ++current;
        } else {
            run.push_back(current);
            demand.push_back(spread_demand(e, c));
            current = 0;
        }
    }
    run.push_back(current);
    if (demand.empty()) return true;

    // Two-state scan: can_l / can_r record whether some assignment lets the
    // previous big entry reserve to its left / right. Run capacities are
    // checked on the transition that settles them.
    bool can_l = demand[0] <= run[0];
    bool can_r = true;
    for (std::size_t i = 1; i < demand.size(); ++i) {
        long gap = run[i];
        bool nl = (can_l && demand[i] <= gap) || (can_r && demand[i - 1] + demand[i] <= gap);
        bool nr = can_l || (can_r && demand[i - 1] <= gap);
        can_l = nl;
        can_r = nr;
        if (!can_l && !can_r) return false;
    }
    long last_gap = run.back();
    return can_l || (can_r && demand.back() <= last_gap);
}

// Largest entry value usable in a c-spread sequence of length q.
inline long spread_max_entry(int q, long c) {
    long r = 1;
    while (spread_demand(r + 1, c) <= q - 1) ++r;
    return r;
}

// Exact count of c-spread sequences of length q by exhaustive generation.
inline BigInt count_c_spread(int q, long c, long long budget = kSpreadBudget) {
    if (q < 1 || c < 1) throw InputError("count_c_spread: positive arguments required");
    if (q > kSpreadLengthCap) throw ResourceError("count_c_spread: q exceeds the desk-scale cap");
    long rmax = spread_max_entry(q, c);
    double total = std::pow(static_cast<double>(rmax), static_cast<double>(q));
    if (total > static_cast<double>(budget)) throw ResourceError("count_c_spread: search space over budget");

    std::vector<int> seq(static_cast<std::size_t>(q), 1);
    BigInt count = 0;
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == q) {
            if (is_c_spread(seq, c)) ++count;
            return;
        }
        for (int v = 1; v <= rmax; ++v) {
            seq[static_cast<std::size_t>(pos)] = v;
            self(self, pos + 1);
        }
    };
    rec(rec, 0);
    return count;
}

// The upper-bound recurrence f(q) <= f(q-1) + 2 sum_{z=c}^{q-1} 2^{z/c} f(q-z-1).
inline double spread_recurrence_bound(int q, long c) {
    if (q < 0 || c < 1) throw InputError("spread_recurrence_bound: bad arguments");
    std::vector<double> f(static_cast<std::size_t>(q) + 1, 1.0);
    for (int m = static_cast<int>(c) + 1; m <= q; ++m) {
        double v = f[static_cast<std::size_t>(m - 1)];
        for (long z = c; z <= m - 1; ++z)
            v += 2.0 * std::pow(2.0, static_cast<double>(z) / static_cast<double>(c)) *
                 f[static_cast<std::size_t>(m - z - 1)];
        f[static_cast<std::size_t>(m)] = v;
    }
    return f[static_cast<std::size_t>(q)];
}

namespace detail {

// Rational lo, hi with lo^n <= a <= hi^n, by bisection.
struct RatBounds {
    Rat lo, hi;
};

inline RatBounds nth_root_bounds(const Rat& a, unsigned n, int iterations = 120) {
    if (a <= 0) throw InputError("nth_root_bounds: positive argument required");
    Rat lo = 0, hi = a < 1 ? Rat(1) : a;
    auto pown = [n](const Rat& x) { return rat_pow(x, n); };
    for (int i = 0; i < iterations; ++i) {
        Rat mid = (lo + hi) / 2;
        if (pown(mid) <= a) lo = mid;
        else hi = mid;
    }
    return {lo, hi};
}

} // namespace detail

// Hypotheses of the c-spread counting bound: 2^{2/c} <= 1+eps and
// w^c <= (eps/2)(1-w) with w = (1+eps)^{-1/2}. Verified with exact rational
// interval arithmetic.
struct SpreadParams {
    long c;
    Rat eps;

    double w() const { return 1.0 / std::sqrt(1.0 + static_cast<double>(eps)); }

    bool hypotheses_hold() const {
        if (c < 1 || eps <= 0) return false;
        if (c <= 64) {
            // 2^{2/c} <= 1+eps  <=>  4 <= (1+eps)^c
            Rat lhs = detail::rat_pow(Rat(1) + eps, static_cast<unsigned>(c));
            if (lhs < 4) return false;
            // Conservative check of w^c <= (eps/2)(1-w) using bounds on w.
            auto wb = detail::nth_root_bounds(Rat(1) / (Rat(1) + eps), 2);
            Rat wc_hi = detail::rat_pow(wb.hi, static_cast<unsigned>(c));
            Rat rhs_lo = (eps / 2) * (Rat(1) - wb.hi);
            return wc_hi <= rhs_lo;
        }
        // Exact powers get enormous for large c; 100-digit floats leave
        // dozens of guard digits against any margin this check ever meets.
        const BigFloat guard = BigFloat(1) + BigFloat("1e-60");
        BigFloat e(eps);
        if (boost::multiprecision::pow(BigFloat(2), BigFloat(2) / static_cast<int>(c)) * guard > 1 + e)
            return false;
        BigFloat w = 1 / boost::multiprecision::sqrt(1 + e);
        BigFloat lhs = boost::multiprecision::pow(w, static_cast<int>(c)) * guard;
        return lhs <= (e / 2) * (1 - w);
    }
};

// --- Dyck word counting ---

inline const std::string kForbiddenFactor = "0110110";

namespace detail {

// KMP transition table for the forbidden factor.
struct FactorAutomaton {
    int next[8][2];

    FactorAutomaton() {
        const std::string& pat = kForbiddenFactor;
        const int m = static_cast<int>(pat.size());
        std::vector<int> fail(static_cast<std::size_t>(m) + 1, 0);
        for (int i = 1; i < m; ++i) {
            int k = fail[static_cast<std::size_t>(i)];
            while (k > 0 && pat[static_cast<std::size_t>(k)] != pat[static_cast<std::size_t>(i)])
                k = fail[static_cast<std::size_t>(k)];
            fail[static_cast<std::size_t>(i + 1)] = (pat[static_cast<std::size_t>(k)] == pat[static_cast<std::size_t>(i)]) ? k + 1 : 0;
        }
        for (int st = 0; st < 8; ++st) {
            for (int b = 0; b < 2; ++b) {
                if (st == m) {
                    next[st][b] = m;
                    continue;
                }
                int k = st;
                char ch = static_cast<char>('0' + b);
                while (k > 0 && pat[static_cast<std::size_t>(k)] != ch) k = fail[static_cast<std::size_t>(k)];
                next[st][b] = (pat[static_cast<std::size_t>(k)] == ch) ? k + 1 : 0;
            }
        }
    }
};

inline const FactorAutomaton& factor_automaton() {
    static const FactorAutomaton a;
    return a;
}

} // namespace detail

// Exact number of Dyck words of length 2t avoiding the factor 0110110.
inline BigInt count_special_dyck(int t, int cap = kDyckEnumerationCap) {
    if (t < 1) throw InputError("count_special_dyck: t must be >= 1");
    if (t > cap) throw ResourceError("count_special_dyck: t exceeds the desk-scale cap");
    const auto& aut = detail::factor_automaton();
    BigInt count = 0;
    auto rec = [&](auto&& self, int zeros, int ones, int state) -> void {
        if (state == 7) return;
        if (zeros == t && ones == t) {
            ++count;
            return;
        }
        if (zeros < t) self(self, zeros + 1, ones, aut.next[state][0]);
        if (ones < zeros) self(self, zeros, ones + 1, aut.next[state][1]);
    };
    rec(rec, 0, 0, 0);
    return count;
}

// Words over {0,1,2} with no factor 21 or 02, every nonempty prefix holding
// strictly more zeros than nonzeros, and exactly one more zero than nonzeros
// overall. Counts bucketed by the number of 01 factors.
inline std::map<int, BigInt> enumerate_Dprime(int t, int cap = kDyckEnumerationCap) {
    if (t < 1) throw InputError("enumerate_Dprime: t must be >= 1");
    if (t > cap) throw ResourceError("enumerate_Dprime: t exceeds the desk-scale cap");
    std::map<int, BigInt> by_q;
    auto rec = [&](auto&& self, int zeros, int nonzeros, int last, int q01) -> void {
        if (zeros == t && nonzeros == t - 1) {
            ++by_q[q01];
            return;
        }
        if (zeros < t) self(self, zeros + 1, nonzeros, 0, q01);
        if (nonzeros < t - 1 && nonzeros + 1 < zeros) {
            if (last != 2) self(self, zeros, nonzeros + 1, 1, q01 + (last == 0 ? 1 : 0));
            if (last != 0) self(self, zeros, nonzeros + 1, 2, q01);
        }
    };
    rec(rec, 0, 0, -1, 0);
    return by_q;
}

// --- Truncated series for the word classes above ---

// Coefficients F_{t,q}: integers counting the words of enumerate_Dprime.
struct SeriesTable {
    int max_t = 0;
    int max_q = 0;
    std::vector<std::vector<BigInt>> coeff;  // coeff[t][q]

    const BigInt& at(int t, int q) const {
        static const BigInt zero = 0;
        if (t < 0 || t > max_t || q < 0 || q > max_q) return zero;
        return coeff[static_cast<std::size_t>(t)][static_cast<std::size_t>(q)];
    }
};

namespace detail {

using YPoly = std::vector<BigInt>;  // coefficients in y

inline void ypoly_acc_mul(YPoly& acc, const YPoly& a, const YPoly& b, int qcap) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size() && static_cast<int>(i + j) <= qcap; ++j) {
            if (b[j] == 0) continue;
            if (acc.size() <= i + j) acc.resize(i + j + 1);
            acc[i + j] += a[i] * b[j];
        }
    }
}

} // namespace detail

// Solves F = z + z y F / (1 - F)^2 degree by degree in z. inv = 1/(1-F),
// sq = inv^2 and W = F inv^2 are extended triangularly; each z-coefficient
// is a polynomial in y with nonnegative integer coefficients.
inline SeriesTable series_F(int T, int Qmax) {
    if (T < 1 || Qmax < 0) throw InputError("series_F: bad truncation orders");
    using detail::YPoly;
    std::vector<YPoly> F(static_cast<std::size_t>(T) + 1), inv(static_cast<std::size_t>(T)),
        sq(static_cast<std::size_t>(T)), W(static_cast<std::size_t>(T));
    F[1] = YPoly{1};
    inv[0] = YPoly{1};
    sq[0] = YPoly{1};
    W[0] = YPoly{};

    for (int t = 2; t <= T; ++t) {
        int d = t - 1;
        // inv[d] = sum_{j=1..d} F[j] * inv[d-j]
        YPoly nd;
        for (int j = 1; j <= d; ++j) detail::ypoly_acc_mul(nd, F[static_cast<std::size_t>(j)], inv[static_cast<std::size_t>(d - j)], Qmax);
        inv[static_cast<std::size_t>(d)] = std::move(nd);
        // sq[d] = sum_{i=0..d} inv[i] * inv[d-i]
        YPoly ns;
        for (int i = 0; i <= d; ++i) detail::ypoly_acc_mul(ns, inv[static_cast<std::size_t>(i)], inv[static_cast<std::size_t>(d - i)], Qmax);
        sq[static_cast<std::size_t>(d)] = std::move(ns);
        // W[d] = sum_{j=1..d} F[j] * sq[d-j]
        YPoly nw;
        for (int j = 1; j <= d; ++j) detail::ypoly_acc_mul(nw, F[static_cast<std::size_t>(j)], sq[static_cast<std::size_t>(d - j)], Qmax);
        W[static_cast<std::size_t>(d)] = std::move(nw);
        // F[t] = y * W[t-1]
        YPoly nf(W[static_cast<std::size_t>(d)].size() + 1);
        for (std::size_t q = 0; q < W[static_cast<std::size_t>(d)].size() && static_cast<int>(q + 1) <= Qmax; ++q)
            nf[q + 1] = W[static_cast<std::size_t>(d)][q];
        F[static_cast<std::size_t>(t)] = std::move(nf);
    }

    SeriesTable out;
    out.max_t = T;
    out.max_q = Qmax;
    out.coeff.assign(static_cast<std::size_t>(T) + 1, std::vector<BigInt>(static_cast<std::size_t>(Qmax) + 1, 0));
    for (int t = 0; t <= T; ++t)
        for (std::size_t q = 0; q < F[static_cast<std::size_t>(t)].size() && static_cast<int>(q) <= Qmax; ++q)
            out.coeff[static_cast<std::size_t>(t)][q] = F[static_cast<std::size_t>(t)][q];
    return out;
}

// [z^t] B(z) with B = F(z, 1/delta), exactly.
inline std::vector<Rat> series_B_exact(const SeriesTable& table, int delta) {
    if (delta < 2) throw InputError("series_B_exact: delta must be >= 2");
    std::vector<Rat> out(static_cast<std::size_t>(table.max_t) + 1, Rat(0));
    for (int t = 0; t <= table.max_t; ++t) {
        Rat v = 0;
        Rat ypow = 1;
        for (int q = 0; q <= table.max_q; ++q) {
            v += Rat(table.at(t, q)) * ypow;
            ypow /= delta;
        }
        out[static_cast<std::size_t>(t)] = v;
    }
    return out;
}

// Same coefficients from the single-variable equation B = z (1 + B/(delta (1-B)^2)),
// in floating point; the pair of routes cross-checks the table.
inline std::vector<double> series_B(int delta, int T) {
    if (delta < 2) throw InputError("series_B: delta must be >= 2");
    if (T < 1) throw InputError("series_B: T must be >= 1");
    std::vector<double> B(static_cast<std::size_t>(T) + 1, 0.0), inv(static_cast<std::size_t>(T), 0.0),
        sq(static_cast<std::size_t>(T), 0.0), W(static_cast<std::size_t>(T), 0.0);
    B[1] = 1.0;
    inv[0] = 1.0;
    sq[0] = 1.0;
    const double y = 1.0 / static_cast<double>(delta);
    for (int t = 2; t <= T; ++t) {
        int d = t - 1;
        double nd = 0;
        for (int j = 1; j <= d; ++j) nd += B[static_cast<std::size_t>(j)] * inv[static_cast<std::size_t>(d - j)];
        inv[static_cast<std::size_t>(d)] = nd;
        double ns = 0;
        for (int i = 0; i <= d; ++i) ns += inv[static_cast<std::size_t>(i)] * inv[static_cast<std::size_t>(d - i)];
        sq[static_cast<std::size_t>(d)] = ns;
        double nw = 0;
        for (int j = 1; j <= d; ++j) nw += B[static_cast<std::size_t>(j)] * sq[static_cast<std::size_t>(d - j)];
        W[static_cast<std::size_t>(d)] = nw;
        B[static_cast<std::size_t>(t)] = y * W[static_cast<std::size_t>(d)];
    }
    return B;
}

// --- Characteristic root and growth rate ---

struct CharacteristicRoot {
    double tau = 0;
    double rho = 0;
};

inline double phi_of(double u, int delta) { return 1.0 + u / (static_cast<double>(delta) * (1.0 - u) * (1.0 - u)); }

// tau solves phi(tau) - tau phi'(tau) = 0, i.e. (1-tau)^3 = 2 tau^2 / delta.
inline CharacteristicRoot characteristic_root(int delta) {
    if (delta < 2) throw InputError("characteristic_root: delta must be >= 2");
    auto sign = [delta](double u) {
        double l = (1.0 - u) * (1.0 - u) * (1.0 - u);
        double r = 2.0 * u * u / static_cast<double>(delta);
        return l - r;
    };
    double lo = 1e-12, hi = 1.0 - 1e-12;
    if (sign(lo) <= 0 || sign(hi) >= 0) throw InvariantError("characteristic_root: no sign change");
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (sign(mid) > 0 ? lo : hi) = mid;
        if (hi - lo < 1e-13) break;
    }
    double tau = 0.5 * (lo + hi);
    return {tau, tau / phi_of(tau, delta)};
}

// phi(tau') / tau' at tau' = 1 - delta^{-1/3}; algebraically equal to
// 1 + 1/(delta^{1/3} - 1) + 1/delta^{1/3}.
inline double growth_rate(int delta) {
    if (delta < 2) throw InputError("growth_rate: delta must be >= 2");
    long double cbrt = std::cbrtl(static_cast<long double>(delta));
    long double tp = 1.0L - 1.0L / cbrt;
    long double phi = 1.0L + tp / (static_cast<long double>(delta) * (1.0L - tp) * (1.0L - tp));
    return static_cast<double>(phi / tp);
}

// --- Realisable-sequence counting and Dyck weights ---

// k * delta^{2k-1}: an upper bound on the number of realisable codes of
// length 2k.
inline BigInt alpha_bound(int k, int delta) {
    if (k < 1 || delta < 1) throw InputError("alpha_bound: positive arguments required");
    return BigInt(k) * boost::multiprecision::pow(BigInt(delta), static_cast<unsigned>(2 * k - 1));
}

// Weight k_1 ... k_q / delta^q of a word 0^{l_1} 1^{k_1} ... 0^{l_q} 1^{k_q} 1.
inline Rat dyck_weight(const DyckWord& d, int delta) {
    if (delta < 1) throw InputError("dyck_weight: delta must be >= 1");
    const auto& bits = d.bits;
    if (bits.size() < 2 || bits.back() != 1 || bits.front() != 0)
        throw InputError("dyck_weight: word does not decompose");
    // run-length parse of everything before the final 1
    std::vector<std::pair<int, int>> runs;  // (bit, len)
    for (std::size_t i = 0; i + 1 < bits.size(); ++i) {
        if (!runs.empty() && runs.back().first == bits[i]) ++runs.back().second;
        else runs.emplace_back(bits[i], 1);
    }
    if (runs.size() < 2 || runs.size() % 2 != 0 || runs.back().first != 1)
        throw InputError("dyck_weight: word does not decompose");
    BigInt prod = 1;
    int q = 0;
    for (std::size_t i = 0; i < runs.size(); i += 2) {
        if (runs[i].first != 0 || runs[i + 1].first != 1) throw InputError("dyck_weight: word does not decompose");
        prod *= runs[i + 1].second;
        ++q;
    }
    return Rat(prod) / boost::multiprecision::pow(BigInt(delta), static_cast<unsigned>(q));
}

// Sum of weights over all Dyck words of length 2t whose proper prefixes hold
// strictly more zeros than ones and which decompose as above.
inline Rat sum_dyck_weights(int t, int delta, int cap = kDyckEnumerationCap) {
    if (t < 1) throw InputError("sum_dyck_weights: t must be >= 1");
    if (t > cap) throw ResourceError("sum_dyck_weights: t exceeds the desk-scale cap");
    Rat total = 0;
    std::vector<int> bits;
    bits.reserve(static_cast<std::size_t>(2 * t));
    auto rec = [&](auto&& self, int zeros, int ones) -> void {
        if (zeros == t && ones == t) {
            DyckWord d{bits};
            // words ending 01 have no decomposition; skip them
            if (bits[bits.size() - 2] == 1) total += dyck_weight(d, delta);
            return;
        }
        // strict dominance on proper prefixes
        if (zeros < t) {
            bits.push_back(0);
            self(self, zeros + 1, ones);
            bits.pop_back();
        }
        if (ones < zeros && (ones + 1 < zeros || (zeros == t && ones + 1 == t))) {
            bits.push_back(1);
            self(self, zeros, ones + 1);
            bits.pop_back();
        }
    };
    rec(rec, 0, 0);
    return total;
}

} // namespace nonrep

#endif
