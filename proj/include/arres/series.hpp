#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <arres/rational.hpp>

namespace arres {

/// Truncated multivariate Laurent series over the rationals. A value is a
/// monomial prefactor z^shift (the exact Laurent part, exponents of either
/// sign) times a power-series body whose exponents are kept up to per-variable
/// caps. Multiplication adds shifts and truncates bodies to the pointwise
/// minimum caps, so every retained coefficient is exact.
class TruncatedSeries {
public:
    using Exps = std::vector<int>;

    TruncatedSeries(int nvars, Exps caps)
        : shift_(nvars, 0), caps_(std::move(caps)) {
        if (static_cast<int>(caps_.size()) != nvars) throw domain_error("series: caps size mismatch");
        for (int c : caps_)
            if (c < 0) throw domain_error("series: negative cap");
    }

    static TruncatedSeries constant(int nvars, Exps caps, const Rational& value) {
        TruncatedSeries s(nvars, std::move(caps));
        if (!value.is_zero()) s.terms_[Exps(nvars, 0)] = value;
        return s;
    }

    /// z^exps * coef; negative exponents go into the shift.
    static TruncatedSeries monomial(int nvars, Exps caps, const Exps& exps, const Rational& coef) {
        TruncatedSeries s(nvars, std::move(caps));
        if (static_cast<int>(exps.size()) != nvars) throw domain_error("series: exponent size mismatch");
        Exps body(nvars, 0);
        for (int v = 0; v < nvars; ++v) {
            if (exps[v] < 0)
                s.shift_[v] = exps[v];
            else
                body[v] = exps[v];
        }
        if (!coef.is_zero() && s.within_caps(body)) s.terms_[body] = coef;
        return s;
    }

    int nvars() const { return static_cast<int>(caps_.size()); }
    const Exps& caps() const { return caps_; }
    const Exps& shift() const { return shift_; }
    const std::map<Exps, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Adds coef * z^(shift + body_exps); silently dropped beyond the caps.
    void add_term(const Exps& body_exps, const Rational& coef) {
        if (static_cast<int>(body_exps.size()) != nvars()) throw domain_error("series: exponent size mismatch");
        for (int e : body_exps)
            if (e < 0) throw domain_error("series: negative body exponent");
        if (!within_caps(body_exps) || coef.is_zero()) return;
        auto& slot = terms_[body_exps];
        slot += coef;
        if (slot.is_zero()) terms_.erase(body_exps);
    }

    TruncatedSeries operator*(const TruncatedSeries& o) const {
        if (nvars() != o.nvars()) throw domain_error("series: variable mismatch");
        Exps caps(nvars());
        for (int v = 0; v < nvars(); ++v) caps[v] = std::min(caps_[v], o.caps_[v]);
        TruncatedSeries p(nvars(), caps);
        for (int v = 0; v < nvars(); ++v) p.shift_[v] = shift_[v] + o.shift_[v];
        for (const auto& [ea, ca] : terms_) {
            for (const auto& [eb, cb] : o.terms_) {
                Exps e(nvars());
                bool keep = true;
                for (int v = 0; v < nvars(); ++v) {
                    e[v] = ea[v] + eb[v];
                    if (e[v] > caps[v]) { keep = false; break; }
                }
                if (keep) p.add_term(e, ca * cb);
            }
        }
        return p;
    }

    TruncatedSeries operator+(const TruncatedSeries& o) const {
        if (nvars() != o.nvars()) throw domain_error("series: variable mismatch");
        if (shift_ != o.shift_) throw domain_error("series: shift mismatch in addition");
        Exps caps(nvars());
        for (int v = 0; v < nvars(); ++v) caps[v] = std::min(caps_[v], o.caps_[v]);
        TruncatedSeries s(nvars(), caps);
        s.shift_ = shift_;
        for (const auto& [e, c] : terms_)
            if (s.within_caps(e)) s.add_term(e, c);
        for (const auto& [e, c] : o.terms_)
            if (s.within_caps(e)) s.add_term(e, c);
        return s;
    }

    TruncatedSeries scaled(const Rational& f) const {
        TruncatedSeries s(nvars(), caps_);
        s.shift_ = shift_;
        if (!f.is_zero())
            for (const auto& [e, c] : terms_) s.terms_[e] = c * f;
        return s;
    }

    TruncatedSeries pow(int k) const {
        if (k < 0) throw domain_error("series: negative power");
        TruncatedSeries acc = constant(nvars(), caps_, Rational(1));
        for (int i = 0; i < k; ++i) acc = acc * *this;
        return acc;
    }

    /// Multiplicative inverse of a unit (nonzero constant body term), exact
    /// within the caps; the Laurent shift negates.
    TruncatedSeries invert_unit() const {
        const auto it = terms_.find(Exps(nvars(), 0));
        if (it == terms_.end()) throw domain_error("series: zero constant term");
        const Rational inv0 = inverse(it->second);
        TruncatedSeries b(nvars(), caps_);
        for (int v = 0; v < nvars(); ++v) b.shift_[v] = -shift_[v];
        for (const auto& e : graded_exponents()) {
            if (std::accumulate(e.begin(), e.end(), 0) == 0) {
                b.terms_[e] = inv0;
                continue;
            }
            Rational s;
            for (const auto& [f, cf] : terms_) {
                bool inside = true;
                Exps rem(nvars());
                for (int v = 0; v < nvars(); ++v) {
                    rem[v] = e[v] - f[v];
                    if (rem[v] < 0) { inside = false; break; }
                }
                if (!inside || rem == e) continue;
                const auto bi = b.terms_.find(rem);
                if (bi != b.terms_.end()) s += cf * bi->second;
            }
            if (!s.is_zero()) b.terms_[e] = -s * inv0;
        }
        return b;
    }

    /// Coefficient of z^exps (absolute Laurent exponents). Querying outside
    /// the retained window signals a truncation-bound bug in the caller.
    Rational coefficient(const Exps& exps) const {
        if (static_cast<int>(exps.size()) != nvars()) throw domain_error("series: exponent size mismatch");
        Exps body(nvars());
        for (int v = 0; v < nvars(); ++v) {
            body[v] = exps[v] - shift_[v];
            if (body[v] < 0 || body[v] > caps_[v])
                throw domain_error("series: coefficient query outside retained window");
        }
        const auto it = terms_.find(body);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Sorted "coef * z^(e,...)" lines with absolute exponents, for goldens.
    std::string dump() const {
        std::ostringstream os;
        for (const auto& [e, c] : terms_) {
            os << c.str() << " * z^(";
            for (int v = 0; v < nvars(); ++v) os << (v ? "," : "") << e[v] + shift_[v];
            os << ")\n";
        }
        return os.str();
    }

private:
    bool within_caps(const Exps& e) const {
        for (int v = 0; v < nvars(); ++v)
            if (e[v] > caps_[v]) return false;
        return true;
    }

    // All tuples within the caps, ordered by total degree then lex.
    std::vector<Exps> graded_exponents() const {
        std::vector<Exps> all{Exps{}};
        for (int v = 0; v < nvars(); ++v) {
            std::vector<Exps> next;
            for (const auto& p : all)
                for (int e = 0; e <= caps_[v]; ++e) {
                    auto q = p;
                    q.push_back(e);
                    next.push_back(std::move(q));
                }
            all = std::move(next);
        }
        std::sort(all.begin(), all.end(), [](const Exps& a, const Exps& b) {
            const int da = std::accumulate(a.begin(), a.end(), 0);
            const int db = std::accumulate(b.begin(), b.end(), 0);
            if (da != db) return da < db;
            return a < b;
        });
        return all;
    }

    Exps shift_;
    Exps caps_;
    std::map<Exps, Rational> terms_;
};

} // namespace arres
