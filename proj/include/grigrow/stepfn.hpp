#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "grigrow/rational.hpp"

// Exact piecewise-constant functions on the circle Q/Z = [0,1) with rational
// breakpoints.  Canonical form: the cut at 0 is always present, cuts are
// strictly increasing, adjacent values are distinct (no merging across the
// wrap, so representations are unique).  A function with k cuts takes value
// vals[i] on [cuts[i], cuts[i+1]) and vals[k-1] on [cuts[k-1], 1).

namespace grigrow {

template <class V>
class StepFunction {
public:
    StepFunction() : cuts_{Rational(0)}, vals_{V{}} {}

    static StepFunction constant(V v) {
        StepFunction f;
        f.vals_[0] = std::move(v);
        return f;
    }

    // value `inside` on [lo, hi), `outside` elsewhere; requires 0 <= lo < hi <= 1.
    static StepFunction indicator(const Rational& lo, const Rational& hi, V inside, V outside) {
        if (lo < Rational(0) || hi <= lo || Rational(1) < hi)
            throw std::invalid_argument("stepfn: bad indicator interval");
        StepFunction f;
        f.cuts_.clear();
        f.vals_.clear();
        if (Rational(0) < lo) {
            f.cuts_.push_back(Rational(0));
            f.vals_.push_back(outside);
        }
        f.cuts_.push_back(lo);
        f.vals_.push_back(std::move(inside));
        if (hi < Rational(1)) {
            f.cuts_.push_back(hi);
            f.vals_.push_back(std::move(outside));
        }
        f.canonicalize();
        return f;
    }

    static StepFunction from_pieces(std::vector<Rational> cuts, std::vector<V> vals) {
        if (cuts.size() != vals.size() || cuts.empty())
            throw std::invalid_argument("stepfn: pieces mismatch");
        StepFunction f;
        f.cuts_ = std::move(cuts);
        f.vals_ = std::move(vals);
        if (f.cuts_.front() != Rational(0))
            throw std::invalid_argument("stepfn: first cut must be 0");
        for (std::size_t i = 1; i < f.cuts_.size(); ++i)
            if (!(f.cuts_[i - 1] < f.cuts_[i]) || !(f.cuts_[i] < Rational(1)))
                throw std::invalid_argument("stepfn: cuts must increase within [0,1)");
        f.canonicalize();
        return f;
    }

    const std::vector<Rational>& cuts() const { return cuts_; }
    const std::vector<V>& values() const { return vals_; }

    const V& eval(const Rational& r) const {
        Rational x = r.mod1();
        std::size_t lo = 0, hi = cuts_.size();
        while (lo + 1 < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (cuts_[mid] <= x)
                lo = mid;
            else
                hi = mid;
        }
        return vals_[lo];
    }

    // g(r) = f(r + delta)
    StepFunction shifted(const Rational& delta) const {
        std::vector<Rational> pts;
        pts.push_back(Rational(0));
        for (const auto& c : cuts_) pts.push_back((c - delta).mod1());
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        StepFunction g;
        g.cuts_.clear();
        g.vals_.clear();
        for (const auto& p : pts) {
            g.cuts_.push_back(p);
            g.vals_.push_back(eval(p + delta));
        }
        g.canonicalize();
        return g;
    }

    template <class W, class F>
    auto combine(const StepFunction<W>& other, const F& op) const
        -> StepFunction<decltype(op(std::declval<const V&>(), std::declval<const W&>()))> {
        using R = decltype(op(std::declval<const V&>(), std::declval<const W&>()));
        std::vector<Rational> pts;
        pts.reserve(cuts_.size() + other.cuts().size());
        pts.insert(pts.end(), cuts_.begin(), cuts_.end());
        pts.insert(pts.end(), other.cuts().begin(), other.cuts().end());
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        std::vector<R> vals;
        vals.reserve(pts.size());
        for (const auto& p : pts) vals.push_back(op(eval(p), other.eval(p)));
        return StepFunction<R>::from_pieces(std::move(pts), std::move(vals));
    }

    template <class F>
    auto map(const F& op) const -> StepFunction<decltype(op(std::declval<const V&>()))> {
        using R = decltype(op(std::declval<const V&>()));
        std::vector<R> vals;
        vals.reserve(vals_.size());
        for (const auto& v : vals_) vals.push_back(op(v));
        return StepFunction<R>::from_pieces(cuts_, std::move(vals));
    }

    std::size_t piece_count() const { return cuts_.size(); }
    std::size_t value_count() const {  // number of distinct values
        std::size_t n = 0;
        for (std::size_t i = 0; i < vals_.size(); ++i) {
            bool dup = false;
            for (std::size_t j = 0; j < i; ++j) dup = dup || vals_[i] == vals_[j];
            if (!dup) ++n;
        }
        return n;
    }

    bool operator==(const StepFunction& o) const { return cuts_ == o.cuts_ && vals_ == o.vals_; }
    bool operator!=(const StepFunction& o) const { return !(*this == o); }

private:
    void canonicalize() {
        std::vector<Rational> cuts{cuts_.front()};
        std::vector<V> vals{vals_.front()};
        for (std::size_t i = 1; i < cuts_.size(); ++i) {
            if (vals_[i] == vals.back()) continue;
            cuts.push_back(cuts_[i]);
            vals.push_back(vals_[i]);
        }
        cuts_ = std::move(cuts);
        vals_ = std::move(vals);
    }

    std::vector<Rational> cuts_;
    std::vector<V> vals_;
};

}  // namespace grigrow
