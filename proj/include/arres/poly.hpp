#pragma once

#include <complex>
#include <map>
#include <vector>

#include <arres/linalg.hpp>
#include <arres/series.hpp>

namespace arres {

/// Multivariate polynomial over the rationals, exponent-map representation.
class Poly {
public:
    using Exps = std::vector<int>;

    explicit Poly(int nvars) : nvars_(nvars) {}

    static Poly constant(int nvars, const Rational& c) {
        Poly p(nvars);
        p.add_term(Exps(nvars, 0), c);
        return p;
    }

    static Poly monomial(int nvars, const Exps& e, const Rational& c) {
        Poly p(nvars);
        p.add_term(e, c);
        return p;
    }

    /// The linear form sum_j coeffs[j] * x_j.
    static Poly linear(const Vec& coeffs) {
        Poly p(static_cast<int>(coeffs.size()));
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
            Exps e(coeffs.size(), 0);
            e[j] = 1;
            p.add_term(e, coeffs[j]);
        }
        return p;
    }

    int nvars() const { return nvars_; }
    const std::map<Exps, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Exps& e, const Rational& c) {
        if (static_cast<int>(e.size()) != nvars_) throw domain_error("poly: exponent size mismatch");
        for (int x : e)
            if (x < 0) throw domain_error("poly: negative exponent");
        if (c.is_zero()) return;
        auto& slot = terms_[e];
        slot += c;
        if (slot.is_zero()) terms_.erase(e);
    }

    Poly operator+(const Poly& o) const {
        check_vars(o);
        Poly p = *this;
        for (const auto& [e, c] : o.terms_) p.add_term(e, c);
        return p;
    }

    Poly operator-(const Poly& o) const {
        check_vars(o);
        Poly p = *this;
        for (const auto& [e, c] : o.terms_) p.add_term(e, -c);
        return p;
    }

    Poly operator*(const Poly& o) const {
        check_vars(o);
        Poly p(nvars_);
        for (const auto& [ea, ca] : terms_)
            for (const auto& [eb, cb] : o.terms_) {
                Exps e(nvars_);
                for (int v = 0; v < nvars_; ++v) e[v] = ea[v] + eb[v];
                p.add_term(e, ca * cb);
            }
        return p;
    }

    Poly scaled(const Rational& f) const {
        Poly p(nvars_);
        if (!f.is_zero())
            for (const auto& [e, c] : terms_) p.terms_[e] = c * f;
        return p;
    }

    Poly pow(int k) const {
        if (k < 0) throw domain_error("poly: negative power");
        Poly acc = constant(nvars_, Rational(1));
        for (int i = 0; i < k; ++i) acc = acc * *this;
        return acc;
    }

    Poly derivative(int var) const {
        Poly p(nvars_);
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0) continue;
            Exps d = e;
            d[var] -= 1;
            p.add_term(d, c * Rational(e[var]));
        }
        return p;
    }

    Rational eval(const Vec& point) const {
        if (static_cast<int>(point.size()) != nvars_) throw domain_error("poly: point size mismatch");
        Rational s;
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            for (int v = 0; v < nvars_; ++v)
                for (int i = 0; i < e[v]; ++i) t *= point[v];
            s += t;
        }
        return s;
    }

    std::complex<double> eval(const std::vector<std::complex<double>>& point) const {
        std::complex<double> s = 0.0;
        for (const auto& [e, c] : terms_) {
            std::complex<double> t = c.to_double();
            for (int v = 0; v < nvars_; ++v)
                for (int i = 0; i < e[v]; ++i) t *= point[v];
            s += t;
        }
        return s;
    }

    /// Substitutes each variable by a polynomial in a fresh variable set.
    Poly compose(const std::vector<Poly>& images) const {
        if (static_cast<int>(images.size()) != nvars_) throw domain_error("poly: image count mismatch");
        const int out_vars = images.empty() ? 0 : images.front().nvars();
        Poly acc(out_vars);
        for (const auto& [e, c] : terms_) {
            Poly t = Poly::constant(out_vars, c);
            for (int v = 0; v < nvars_; ++v)
                if (e[v] > 0) t = t * images[v].pow(e[v]);
            acc = acc + t;
        }
        return acc;
    }

    /// Substitutes each variable by a series; the product is truncated to the
    /// given caps throughout, keeping intermediate growth bounded.
    TruncatedSeries compose_series(const std::vector<TruncatedSeries>& images,
                                   const std::vector<int>& caps) const {
        if (static_cast<int>(images.size()) != nvars_) throw domain_error("poly: image count mismatch");
        const int out_vars = static_cast<int>(caps.size());
        TruncatedSeries acc(out_vars, caps);
        for (const auto& [e, c] : terms_) {
            TruncatedSeries t = TruncatedSeries::constant(out_vars, caps, c);
            for (int v = 0; v < nvars_; ++v)
                for (int i = 0; i < e[v]; ++i) t = t * images[v];
            acc = acc + t;
        }
        return acc;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.nvars_ == b.nvars_ && a.terms_ == b.terms_; }

private:
    void check_vars(const Poly& o) const {
        if (nvars_ != o.nvars_) throw domain_error("poly: variable mismatch");
    }

    int nvars_;
    std::map<Exps, Rational> terms_;
};

} // namespace arres
