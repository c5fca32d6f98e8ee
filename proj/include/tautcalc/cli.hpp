#pragma once

#include "tautcalc/cache_io.hpp"
#include "tautcalc/canonical.hpp"
#include "tautcalc/elsv.hpp"
#include "tautcalc/enumerate.hpp"
#include "tautcalc/hurwitz.hpp"
#include "tautcalc/intersection.hpp"
#include "tautcalc/theorems.hpp"
#include "tautcalc/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace tautcalc {
namespace cli {

using ordered_json = nlohmann::ordered_json;

// Exit codes: 0 ok, 2 malformed input, 3 unsupported mathematical domain,
// 1 anything else.
namespace exit_code {
constexpr int ok = 0;
constexpr int internal = 1;
constexpr int bad_input = 2;
constexpr int unsupported = 3;
}  // namespace exit_code

namespace detail {

inline std::vector<int> parse_int_csv(const std::string& s, const char* what) {
    std::vector<int> out;
    if (s.empty()) throw std::invalid_argument(std::string(what) + ": empty list");
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) throw std::invalid_argument(std::string(what) + ": empty item");
        size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(cur, &pos);
        } catch (...) {
            throw std::invalid_argument(std::string(what) + ": bad integer '" + cur + "'");
        }
        if (pos != cur.size())
            throw std::invalid_argument(std::string(what) + ": bad integer '" + cur + "'");
        out.push_back(v);
        cur.clear();
    };
    for (char c : s) {
        if (c == ',')
            flush();
        else
            cur.push_back(c);
    }
    flush();
    return out;
}

inline std::string join_ints(const std::vector<int>& v) {
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << v[i];
    }
    return os.str();
}

struct Report {
    std::string command;
    std::vector<std::pair<std::string, ordered_json>> params;
    std::vector<std::string> methods;
    ordered_json result = ordered_json::object();
    std::vector<std::string> csv_header;
    std::vector<std::vector<std::string>> csv_rows;
    std::vector<std::string> text_lines;

    void param(const std::string& k, ordered_json v) { params.emplace_back(k, std::move(v)); }
};

inline std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        out.push_back(c);
    }
    out += "\"";
    return out;
}

inline void render(const Report& r, const std::string& format, std::ostream& out) {
    if (format == "json") {
        ordered_json env;
        env["command"] = r.command;
        ordered_json params = ordered_json::object();
        for (const auto& [k, v] : r.params) params[k] = v;
        env["params"] = params;
        env["result"] = r.result;
        env["methods"] = r.methods;
        env["exact_arithmetic"] = true;
        env["version"] = kVersion;
        out << env.dump(2) << "\n";
    } else if (format == "csv") {
        std::ostringstream line;
        for (size_t i = 0; i < r.csv_header.size(); ++i) {
            if (i) line << ",";
            line << r.csv_header[i];
        }
        out << line.str() << "\n";
        for (const auto& row : r.csv_rows) {
            std::ostringstream l2;
            for (size_t i = 0; i < row.size(); ++i) {
                if (i) l2 << ",";
                l2 << csv_quote(row[i]);
            }
            out << l2.str() << "\n";
        }
    } else {
        for (const auto& l : r.text_lines) out << l << "\n";
    }
}

struct StratumRow {
    std::string key;
    StratumStats stats;
    Int automorphisms;
};

inline ordered_json stratum_json(const std::string& key, const StratumStats& st,
                                 const Int& aut) {
    ordered_json j;
    j["key"] = key;
    j["codim"] = st.codimension;
    j["dim"] = st.dimension;
    j["genus_zero_count"] = st.genus_zero_count;
    j["automorphisms"] = aut.str();
    return j;
}

}  // namespace detail

struct Options {
    int genus = 0;
    int markings = 0;
    std::string partition;
    std::string partition2;
    int codim = 0;
    int dim = 0;
    std::string method = "character";
    std::string connected = "true";
    std::string variant;
    int s_value = -1;
    std::string format = "text";
    std::string cache_path;
    int max_codim = -1;
    long seed = 0;
};

inline void run_strata(detail::Report& rep, const Options& opt);
inline void run_psi(detail::Report& rep, const Options& opt);
inline void run_lambda_g(detail::Report& rep, const Options& opt);
inline void run_hurwitz(detail::Report& rep, const Options& opt, CLI::App& sub);
inline void run_elsv_check(detail::Report& rep, const Options& opt);
inline void run_support(detail::Report& rep, const Options& opt);
inline void run_band(detail::Report& rep, const Options& opt);
inline void run_socle(detail::Report& rep, const Options& opt);
inline void run_lowdim(detail::Report& rep, const Options& opt);
inline void run_diaz(detail::Report& rep, const Options& opt, CLI::App& sub);

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"exact calculator for stable-curve strata, intersection numbers and "
                 "Hurwitz counts"};
    app.name("tautcalc");
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub, bool needs_partition, bool has_partition2 = false) {
        sub->add_option("--genus", opt.genus, "ambient genus")->required();
        if (needs_partition)
            sub->add_option("--partition", opt.partition, "comma separated parts")->required();
        if (has_partition2)
            sub->add_option("--partition2", opt.partition2, "second ramification profile");
        sub->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"json", "csv", "text"}));
        sub->add_option("--cache-path", opt.cache_path, "persistent cache file");
        sub->add_option("--seed", opt.seed, "random seed (echoed in reports)");
        return sub;
    };

    auto* strata = add_common(app.add_subcommand("strata", "enumerate boundary strata"), false);
    strata->add_option("--markings", opt.markings, "number of legs")->required();
    strata->add_option("--max-codim", opt.max_codim, "codimension cap");

    add_common(app.add_subcommand("psi", "psi intersection number"), true);
    add_common(app.add_subcommand("lambda-g", "psi integral against lambda_g"), true);

    auto* hurwitz = add_common(app.add_subcommand("hurwitz", "Hurwitz numbers"), true, true);
    hurwitz->add_option("--method", opt.method, "evaluation method")
        ->check(CLI::IsMember({"bruteforce", "character", "cutjoin", "elsv", "all"}));
    hurwitz->add_option("--connected", opt.connected, "connected covers only")
        ->check(CLI::IsMember({"true", "false"}));

    add_common(app.add_subcommand("elsv-check", "cross-validate Hurwitz methods"), true);

    auto* support = add_common(app.add_subcommand("support", "strata supporting codimension i"),
                               false);
    support->add_option("--markings", opt.markings, "number of legs")->required();
    support->add_option("--codim", opt.codim, "class codimension i")->required();

    auto* band = add_common(app.add_subcommand("band", "dimension-j band of strata"), false);
    band->add_option("--markings", opt.markings, "number of legs")->required();
    band->add_option("--dim", opt.dim, "dimension j")->required();

    auto* socle = add_common(app.add_subcommand("socle", "top graded piece strata"), false);
    socle->add_option("--markings", opt.markings, "number of legs")->required();
    socle->add_option("--variant", opt.variant, "full | compact_type | rational_tails")
        ->required();

    auto* lowdim = add_common(app.add_subcommand("lowdim", "low-dimension generators"), false);
    lowdim->add_option("--markings", opt.markings, "number of legs")->required();
    lowdim->add_option("--dim", opt.dim, "dimension j")->required();

    auto* diaz = add_common(app.add_subcommand("diaz", "complete-subvariety dimension bound"),
                            false);
    diaz->add_option("--markings", opt.markings, "number of legs");
    diaz->add_option("--variant", opt.variant, "s_leq_s | rational_tails | compact_type")
        ->required();
    diaz->add_option("--s", opt.s_value, "branch value count for s_leq_s");

    std::vector<char*> argv;
    std::string prog = "tautcalc";
    argv.push_back(prog.data());
    std::vector<std::string> copy = args;
    for (auto& a : copy) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_code::ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::bad_input;
    }

    std::string cache_path = opt.cache_path;
    if (cache_path.empty()) {
        if (const char* env = std::getenv("TAUT_CACHE")) cache_path = env;
    }

    try {
        std::vector<CacheEntry> loaded;
        if (!cache_path.empty()) {
            std::ifstream probe(cache_path);
            if (probe.good()) {
                loaded = cache_load(cache_path);
                cache_seed(loaded);
            }
        }

        detail::Report rep;
        CLI::App* sub = app.get_subcommands().front();
        rep.command = sub->get_name();

        if (rep.command == "strata") {
            run_strata(rep, opt);
        } else if (rep.command == "psi") {
            run_psi(rep, opt);
        } else if (rep.command == "lambda-g") {
            run_lambda_g(rep, opt);
        } else if (rep.command == "hurwitz") {
            run_hurwitz(rep, opt, *sub);
        } else if (rep.command == "elsv-check") {
            run_elsv_check(rep, opt);
        } else if (rep.command == "support") {
            run_support(rep, opt);
        } else if (rep.command == "band") {
            run_band(rep, opt);
        } else if (rep.command == "socle") {
            run_socle(rep, opt);
        } else if (rep.command == "lowdim") {
            run_lowdim(rep, opt);
        } else if (rep.command == "diaz") {
            run_diaz(rep, opt, *sub);
        }

        detail::render(rep, opt.format, out);

        if (!cache_path.empty()) {
            auto entries = cache_collect();
            entries.insert(entries.end(), loaded.begin(), loaded.end());
            cache_store(cache_path, std::move(entries));
        }
        return exit_code::ok;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::bad_input;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::unsupported;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::internal;
    }
}

namespace detail {
inline void common_params(Report& rep, const Options& opt) {
    rep.param("format", opt.format);
    rep.param("seed", opt.seed);
    if (!opt.cache_path.empty()) rep.param("cache_path", opt.cache_path);
}
}  // namespace detail

inline void run_strata(detail::Report& rep, const Options& opt) {
    rep.param("genus", opt.genus);
    rep.param("markings", opt.markings);
    if (opt.max_codim >= 0) rep.param("max_codim", opt.max_codim);
    detail::common_params(rep, opt);
    rep.methods = {"degeneration-closure"};

    auto strata = enumerate_strata(opt.genus, opt.markings,
                                   opt.max_codim >= 0 ? std::optional<int>(opt.max_codim)
                                                      : std::nullopt);
    ordered_json arr = ordered_json::array();
    std::map<int, int> by_codim;
    rep.csv_header = {"key", "codim", "dim", "genus_zero_count", "automorphisms"};
    for (const auto& G : strata) {
        auto st = stratum_stats(G, opt.genus, opt.markings);
        auto key = canonical_key(G);
        auto aut = automorphism_count(G);
        arr.push_back(detail::stratum_json(key, st, aut));
        ++by_codim[st.codimension];
        rep.csv_rows.push_back({key, std::to_string(st.codimension),
                                std::to_string(st.dimension),
                                std::to_string(st.genus_zero_count), aut.str()});
        std::ostringstream line;
        line << "codim=" << st.codimension << " dim=" << st.dimension
             << " g0=" << st.genus_zero_count << " aut=" << aut.str() << " " << key;
        rep.text_lines.push_back(line.str());
    }
    ordered_json codims = ordered_json::object();
    for (const auto& [c, k] : by_codim) codims[std::to_string(c)] = k;
    rep.result["count"] = strata.size();
    rep.result["by_codim"] = codims;
    rep.result["strata"] = arr;
    std::ostringstream total;
    total << "total " << strata.size() << " strata";
    rep.text_lines.push_back(total.str());
}

inline void run_psi(detail::Report& rep, const Options& opt) {
    auto a = detail::parse_int_csv(opt.partition, "--partition");
    rep.param("genus", opt.genus);
    rep.param("partition", detail::join_ints(a));
    detail::common_params(rep, opt);
    rep.methods = {"witten-kontsevich-recursion"};
    Rational v = psi_integral(opt.genus, a);
    rep.result["value"] = to_fraction_string(v);
    rep.csv_header = {"value"};
    rep.csv_rows.push_back({to_fraction_string(v)});
    rep.text_lines.push_back(to_compact_string(v));
}

inline void run_lambda_g(detail::Report& rep, const Options& opt) {
    auto a = detail::parse_int_csv(opt.partition, "--partition");
    rep.param("genus", opt.genus);
    rep.param("partition", detail::join_ints(a));
    detail::common_params(rep, opt);
    rep.methods = {"lambda-g-evaluation"};
    Rational v = lambda_g_integral(opt.genus, a);
    rep.result["value"] = to_fraction_string(v);
    rep.csv_header = {"value"};
    rep.csv_rows.push_back({to_fraction_string(v)});
    rep.text_lines.push_back(to_compact_string(v));
}

namespace detail {
inline std::string method_tag(const std::string& m) {
    if (m == "bruteforce") return "bruteforce-factorizations";
    if (m == "character") return "frobenius-characters";
    if (m == "cutjoin") return "cut-and-join";
    if (m == "elsv") return "localization-elsv";
    return m;
}
}  // namespace detail

inline void run_hurwitz(detail::Report& rep, const Options& opt, CLI::App& sub) {
    auto alpha = detail::parse_int_csv(opt.partition, "--partition");
    std::optional<std::vector<int>> beta;
    if (sub.count("--partition2")) beta = detail::parse_int_csv(opt.partition2, "--partition2");
    bool connected = (opt.connected == "true");

    rep.param("genus", opt.genus);
    rep.param("partition", detail::join_ints(alpha));
    if (beta) rep.param("partition2", detail::join_ints(*beta));
    rep.param("connected", connected);
    rep.param("method", opt.method);
    detail::common_params(rep, opt);

    HurwitzSpec spec{opt.genus, alpha, beta, connected};
    std::vector<std::string> methods;
    if (opt.method == "all")
        methods = {"bruteforce", "character", "cutjoin"};
    else
        methods = {opt.method};

    ordered_json values = ordered_json::object();
    std::vector<Rational> got;
    rep.csv_header = {"method", "value"};
    for (const auto& m : methods) {
        Rational v;
        if (m == "bruteforce")
            v = hurwitz_bruteforce(spec);
        else if (m == "character")
            v = hurwitz_character(spec);
        else if (m == "cutjoin")
            v = cut_and_join(spec);
        else if (m == "elsv") {
            if (beta) throw std::invalid_argument("elsv method: single Hurwitz only");
            if (!connected) throw std::invalid_argument("elsv method: connected counts only");
            v = elsv_number(opt.genus, alpha);
        }
        got.push_back(v);
        values[m] = to_fraction_string(v);
        rep.methods.push_back(detail::method_tag(m));
        rep.csv_rows.push_back({m, to_fraction_string(v)});
        rep.text_lines.push_back(m + " = " + to_compact_string(v));
    }
    rep.result["values"] = values;
    if (got.size() > 1) {
        bool agree = true;
        for (const auto& v : got) agree = agree && (v == got.front());
        rep.result["agree"] = agree;
        rep.text_lines.push_back(std::string("agree = ") + (agree ? "true" : "false"));
    }
}

inline void run_elsv_check(detail::Report& rep, const Options& opt) {
    auto alpha = detail::parse_int_csv(opt.partition, "--partition");
    rep.param("genus", opt.genus);
    rep.param("partition", detail::join_ints(alpha));
    detail::common_params(rep, opt);

    HurwitzSpec spec{opt.genus, alpha, std::nullopt, true};
    validate_spec(spec);
    long r = hurwitz_r_value(spec);
    int d = 0;
    for (int x : alpha) d += x;

    std::vector<std::pair<std::string, Rational>> results;
    results.emplace_back("elsv", elsv_number(opt.genus, alpha));
    results.emplace_back("character", hurwitz_character(spec));
    results.emplace_back("cutjoin", cut_and_join(spec));
    BruteForceCaps caps;
    if (d <= caps.max_degree && r <= caps.max_transpositions)
        results.emplace_back("bruteforce", hurwitz_bruteforce(spec, caps));

    ordered_json values = ordered_json::object();
    ordered_json equal = ordered_json::object();
    bool all_equal = true;
    rep.csv_header = {"method", "value", "all_equal"};
    for (const auto& [m, v] : results) {
        values[m] = to_fraction_string(v);
        rep.methods.push_back(detail::method_tag(m));
    }
    for (size_t i = 0; i < results.size(); ++i)
        for (size_t j = i + 1; j < results.size(); ++j) {
            bool eq = results[i].second == results[j].second;
            equal[results[i].first + "=" + results[j].first] = eq;
            all_equal = all_equal && eq;
        }
    for (const auto& [m, v] : results) {
        rep.csv_rows.push_back({m, to_fraction_string(v), all_equal ? "true" : "false"});
        rep.text_lines.push_back(m + " = " + to_compact_string(v));
    }
    rep.result["values"] = values;
    rep.result["equalities"] = equal;
    rep.result["all_equal"] = all_equal;
    rep.text_lines.push_back(std::string("all_equal = ") + (all_equal ? "true" : "false"));
}

inline void run_support(detail::Report& rep, const Options& opt) {
    rep.param("genus", opt.genus);
    rep.param("markings", opt.markings);
    rep.param("codim", opt.codim);
    detail::common_params(rep, opt);
    rep.methods = {"degeneration-closure", "strata-filter"};

    auto supp = theorem_star_support(opt.genus, opt.markings, opt.codim);
    ordered_json arr = ordered_json::array();
    rep.csv_header = {"key", "codim", "dim", "genus_zero_count", "maximal"};
    for (const auto& s : supp) {
        auto st = stratum_stats(s.graph, opt.genus, opt.markings);
        auto key = canonical_key(s.graph);
        auto j = detail::stratum_json(key, st, automorphism_count(s.graph));
        j["maximal"] = s.maximal;
        arr.push_back(j);
        rep.csv_rows.push_back({key, std::to_string(st.codimension),
                                std::to_string(st.dimension),
                                std::to_string(st.genus_zero_count),
                                s.maximal ? "true" : "false"});
        std::ostringstream line;
        line << (s.maximal ? "maximal " : "        ") << key;
        rep.text_lines.push_back(line.str());
    }
    rep.result["threshold"] = opt.codim - opt.genus + 1;
    rep.result["count"] = supp.size();
    rep.result["strata"] = arr;
    std::ostringstream total;
    total << "total " << supp.size() << " strata";
    rep.text_lines.push_back(total.str());
}

inline void run_band(detail::Report& rep, const Options& opt) {
    rep.param("genus", opt.genus);
    rep.param("markings", opt.markings);
    rep.param("dim", opt.dim);
    detail::common_params(rep, opt);
    rep.methods = {"degeneration-closure", "strata-filter"};

    auto strata = impcor_band(opt.genus, opt.markings, opt.dim);
    ordered_json arr = ordered_json::array();
    rep.csv_header = {"key", "codim", "dim", "genus_zero_count"};
    for (const auto& G : strata) {
        auto st = stratum_stats(G, opt.genus, opt.markings);
        auto key = canonical_key(G);
        arr.push_back(detail::stratum_json(key, st, automorphism_count(G)));
        rep.csv_rows.push_back({key, std::to_string(st.codimension),
                                std::to_string(st.dimension),
                                std::to_string(st.genus_zero_count)});
        rep.text_lines.push_back(key);
    }
    rep.result["count"] = strata.size();
    rep.result["strata"] = arr;
    std::ostringstream total;
    total << "total " << strata.size() << " strata";
    rep.text_lines.push_back(total.str());
}

inline void run_socle(detail::Report& rep, const Options& opt) {
    rep.param("genus", opt.genus);
    rep.param("markings", opt.markings);
    rep.param("variant", opt.variant);
    detail::common_params(rep, opt);
    rep.methods = {"degeneration-closure", "strata-filter"};

    SocleVariant variant = parse_socle_variant(opt.variant);
    auto strata = socle_strata(variant, opt.genus, opt.markings);
    ordered_json arr = ordered_json::array();
    rep.csv_header = {"key", "codim", "dim", "genus_zero_count"};
    for (const auto& G : strata) {
        auto st = stratum_stats(G, opt.genus, opt.markings);
        auto key = canonical_key(G);
        arr.push_back(detail::stratum_json(key, st, automorphism_count(G)));
        rep.csv_rows.push_back({key, std::to_string(st.codimension),
                                std::to_string(st.dimension),
                                std::to_string(st.genus_zero_count)});
        rep.text_lines.push_back(key);
    }
    rep.result["variant"] = opt.variant;
    rep.result["count"] = strata.size();
    rep.result["strata"] = arr;
    if (variant == SocleVariant::compact_type) {
        Rational integral = socle_integral_ct(opt.genus);
        rep.result["integral"] = to_fraction_string(integral);
        rep.text_lines.push_back("integral = " + to_compact_string(integral));
    }
    std::ostringstream total;
    total << "total " << strata.size() << " strata";
    rep.text_lines.push_back(total.str());
}

inline void run_lowdim(detail::Report& rep, const Options& opt) {
    rep.param("genus", opt.genus);
    rep.param("markings", opt.markings);
    rep.param("dim", opt.dim);
    detail::common_params(rep, opt);
    rep.methods = {"degeneration-closure", "generator-classification"};

    auto gens = lowdim_generators(opt.genus, opt.markings, opt.dim);
    ordered_json arr = ordered_json::array();
    rep.csv_header = {"kind", "key", "vertex", "note"};
    for (const auto& d : gens) {
        ordered_json j;
        j["kind"] = generator_kind_name(d.kind);
        j["key"] = canonical_key(d.stratum);
        if (d.decorated_vertex)
            j["vertex"] = *d.decorated_vertex;
        else
            j["vertex"] = nullptr;
        j["note"] = d.note;
        arr.push_back(j);
        rep.csv_rows.push_back({generator_kind_name(d.kind), canonical_key(d.stratum),
                                d.decorated_vertex ? std::to_string(*d.decorated_vertex) : "",
                                d.note});
        std::ostringstream line;
        line << generator_kind_name(d.kind) << " " << canonical_key(d.stratum);
        if (d.decorated_vertex) line << " vertex=" << *d.decorated_vertex;
        if (!d.note.empty()) line << " (" << d.note << ")";
        rep.text_lines.push_back(line.str());
    }
    rep.result["count"] = gens.size();
    rep.result["generators"] = arr;
}

inline void run_diaz(detail::Report& rep, const Options& opt, CLI::App& sub) {
    rep.param("genus", opt.genus);
    if (sub.count("--markings")) rep.param("markings", opt.markings);
    rep.param("variant", opt.variant);
    if (sub.count("--s")) rep.param("s", opt.s_value);
    detail::common_params(rep, opt);
    rep.methods = {"dimension-bound"};

    std::optional<int> s;
    if (sub.count("--s")) s = opt.s_value;
    long bound = diaz_bound(parse_diaz_variant(opt.variant), opt.genus, opt.markings, s);
    rep.result["bound"] = bound;
    rep.csv_header = {"bound"};
    rep.csv_rows.push_back({std::to_string(bound)});
    rep.text_lines.push_back(std::to_string(bound));
}

}  // namespace cli
}  // namespace tautcalc
