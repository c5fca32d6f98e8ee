#pragma once

#include "tautcalc/rational.hpp"

#include <map>
#include <optional>
#include <shared_mutex>
#include <tuple>
#include <utility>
#include <vector>

namespace tautcalc {

// Shared-read memo table.  Values are immutable once stored; concurrent
// writers race benignly (first insert wins, values are equal by purity).
// A disabled table behaves as always-empty, so results cannot depend on it.
template <class K, class V>
class MemoTable {
public:
    std::optional<V> lookup(const K& k) const {
        std::shared_lock lock(mu_);
        if (!enabled_) return std::nullopt;
        auto it = entries_.find(k);
        if (it == entries_.end()) return std::nullopt;
        return it->second;
    }

    void insert(const K& k, const V& v) {
        std::unique_lock lock(mu_);
        entries_.emplace(k, v);
    }

    template <class F>
    V get_or_compute(const K& k, F&& f) {
        if (auto hit = lookup(k)) return *hit;
        V v = f();
        {
            std::unique_lock lock(mu_);
            if (enabled_) entries_.emplace(k, v);
        }
        return v;
    }

    bool enabled() const {
        std::shared_lock lock(mu_);
        return enabled_;
    }
    void set_enabled(bool e) {
        std::unique_lock lock(mu_);
        enabled_ = e;
    }
    void clear() {
        std::unique_lock lock(mu_);
        entries_.clear();
    }
    std::map<K, V> snapshot() const {
        std::shared_lock lock(mu_);
        return entries_;
    }

private:
    mutable std::shared_mutex mu_;
    std::map<K, V> entries_;
    bool enabled_ = true;
};

using PsiKey = std::pair<int, std::vector<int>>;                  // (g, exponents desc)
using HodgeKey = std::tuple<int, int, std::vector<int>>;          // (g, k, exponents desc)
using ChiKey = std::pair<std::vector<int>, std::vector<int>>;     // (lambda, mu), parts desc

struct Caches {
    MemoTable<PsiKey, Rational> psi;
    MemoTable<HodgeKey, Rational> hodge;
    MemoTable<ChiKey, Int> chi;

    static Caches& instance() {
        static Caches c;
        return c;
    }
};

}  // namespace tautcalc
