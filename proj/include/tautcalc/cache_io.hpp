#pragma once

#include "tautcalc/memo.hpp"
#include "tautcalc/rational.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tautcalc {

// Cache file: UTF-8 text, one entry per line, "key<TAB>value", keys sorted.
// Keys: psi|g|a1,a2,...   hodge|g|k|a1,a2,...   chi|l1,l2,...|m1,m2,...
// psi/hodge values are "num/den"; chi values are plain integers.
struct CacheEntry {
    std::string key;
    std::string value;
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

inline bool parse_int_list(const std::string& s, std::vector<int>& out) {
    out.clear();
    if (s.empty()) return true;
    for (const auto& tok : split(s, ',')) {
        Int v;
        if (!parse_int_strict(tok, v)) return false;
        if (v < 0 || v > 1000000) return false;
        out.push_back(static_cast<int>(v));
    }
    return true;
}

inline std::string format_int_list(const std::vector<int>& v) {
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << v[i];
    }
    return os.str();
}

// Validates a key/value pair; throws invalid_argument on malformed data.
inline void check_entry(const CacheEntry& e) {
    auto fields = split(e.key, '|');
    std::vector<int> tmp;
    if (fields.size() == 3 && fields[0] == "psi") {
        Int g;
        if (!parse_int_strict(fields[1], g) || g < 0)
            throw std::invalid_argument("bad genus in psi key");
        if (!parse_int_list(fields[2], tmp)) throw std::invalid_argument("bad psi exponents");
        parse_rational(e.value);
    } else if (fields.size() == 4 && fields[0] == "hodge") {
        Int g, k;
        if (!parse_int_strict(fields[1], g) || g < 0)
            throw std::invalid_argument("bad genus in hodge key");
        if (!parse_int_strict(fields[2], k) || k < 0)
            throw std::invalid_argument("bad lambda index in hodge key");
        if (!parse_int_list(fields[3], tmp)) throw std::invalid_argument("bad hodge exponents");
        parse_rational(e.value);
    } else if (fields.size() == 3 && fields[0] == "chi") {
        if (!parse_int_list(fields[1], tmp) || !parse_int_list(fields[2], tmp))
            throw std::invalid_argument("bad partition in chi key");
        Int v;
        if (!parse_int_strict(e.value, v)) throw std::invalid_argument("bad chi value");
    } else {
        throw std::invalid_argument("unknown cache key '" + e.key + "'");
    }
}

}  // namespace detail

// Reads and validates a cache file; corrupt lines are rejected by number.
inline std::vector<CacheEntry> cache_load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cache file not readable: " + path);
    std::vector<CacheEntry> out;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto tab = line.find('\t');
        std::ostringstream err;
        err << "cache parse error at line " << lineno << " of " << path;
        if (tab == std::string::npos) throw std::runtime_error(err.str() + ": missing tab");
        CacheEntry e{line.substr(0, tab), line.substr(tab + 1)};
        try {
            detail::check_entry(e);
        } catch (const std::exception& ex) {
            throw std::runtime_error(err.str() + ": " + ex.what());
        }
        out.push_back(std::move(e));
    }
    return out;
}

// Writes entries sorted by key (duplicates collapse to the first value).
inline void cache_store(const std::string& path, std::vector<CacheEntry> entries) {
    std::stable_sort(entries.begin(), entries.end(),
                     [](const CacheEntry& a, const CacheEntry& b) { return a.key < b.key; });
    entries.erase(std::unique(entries.begin(), entries.end(),
                              [](const CacheEntry& a, const CacheEntry& b) {
                                  return a.key == b.key;
                              }),
                  entries.end());
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cache file not writable: " + path);
    for (const auto& e : entries) out << e.key << "\t" << e.value << "\n";
}

// Injects validated entries into the in-process memo tables.
inline void cache_seed(const std::vector<CacheEntry>& entries) {
    auto& caches = Caches::instance();
    for (const auto& e : entries) {
        auto fields = detail::split(e.key, '|');
        std::vector<int> list;
        if (fields[0] == "psi") {
            detail::parse_int_list(fields[2], list);
            std::sort(list.begin(), list.end(), std::greater<int>());
            caches.psi.insert({std::stoi(fields[1]), list}, parse_rational(e.value));
        } else if (fields[0] == "hodge") {
            detail::parse_int_list(fields[3], list);
            std::sort(list.begin(), list.end(), std::greater<int>());
            caches.hodge.insert({std::stoi(fields[1]), std::stoi(fields[2]), list},
                                parse_rational(e.value));
        } else if (fields[0] == "chi") {
            std::vector<int> lam, mu;
            detail::parse_int_list(fields[1], lam);
            detail::parse_int_list(fields[2], mu);
            caches.chi.insert({lam, mu}, Int(e.value));
        }
    }
}

// Serializes the current memo tables.
inline std::vector<CacheEntry> cache_collect() {
    auto& caches = Caches::instance();
    std::vector<CacheEntry> out;
    for (const auto& [key, val] : caches.psi.snapshot()) {
        std::ostringstream k;
        k << "psi|" << key.first << "|" << detail::format_int_list(key.second);
        out.push_back({k.str(), to_fraction_string(val)});
    }
    for (const auto& [key, val] : caches.hodge.snapshot()) {
        std::ostringstream k;
        k << "hodge|" << std::get<0>(key) << "|" << std::get<1>(key) << "|"
          << detail::format_int_list(std::get<2>(key));
        out.push_back({k.str(), to_fraction_string(val)});
    }
    for (const auto& [key, val] : caches.chi.snapshot()) {
        std::ostringstream k;
        k << "chi|" << detail::format_int_list(key.first) << "|"
          << detail::format_int_list(key.second);
        out.push_back({k.str(), val.str()});
    }
    return out;
}

}  // namespace tautcalc
