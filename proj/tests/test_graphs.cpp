#include "tautcalc/canonical.hpp"
#include "tautcalc/stable_graph.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace tautcalc;

namespace {

StableGraph open_stratum(int g, int n) {
    StableGraph G;
    G.genus = {g};
    G.leg.assign(n, 0);
    return G;
}

// Two genus-0 vertices joined by three parallel edges (genus 2, dimension 0).
StableGraph theta() {
    StableGraph G;
    G.genus = {0, 0};
    G.edges = {{0, 1}, {0, 1}, {0, 1}};
    return G;
}

// Two genus-0 vertices, one loop each, joined by an edge (genus 2, dim 0).
StableGraph dumbbell() {
    StableGraph G;
    G.genus = {0, 0};
    G.edges = {{0, 0}, {0, 1}, {1, 1}};
    return G;
}

}  // namespace

TEST_CASE("basic accessors") {
    StableGraph G;
    G.genus = {1, 0};
    G.edges = {{1, 0}, {1, 1}};
    G.leg = {1, 1};
    G.normalize();
    CHECK(G.num_vertices() == 2);
    CHECK(G.num_edges() == 2);
    CHECK(G.num_legs() == 2);
    CHECK(G.edges[0] == std::make_pair(0, 1));
    CHECK(G.loops_at(1) == 1);
    CHECK(G.loops_at(0) == 0);
    CHECK(G.valence(0) == 1);
    CHECK(G.valence(1) == 5);  // two legs + one edge end + loop counted twice
    CHECK(G.total_genus() == 2);
}

TEST_CASE("validation accepts the open stratum and small boundaries") {
    CHECK(is_valid(open_stratum(2, 0), 2, 0));
    CHECK(is_valid(open_stratum(0, 3), 0, 3));
    CHECK(is_valid(theta(), 2, 0));
    CHECK(is_valid(dumbbell(), 2, 0));

    StableGraph loop_vertex;  // genus-0 vertex with loop and one leg: (1,1) boundary
    loop_vertex.genus = {0};
    loop_vertex.edges = {{0, 0}};
    loop_vertex.leg = {0};
    CHECK(is_valid(loop_vertex, 1, 1));
}

TEST_CASE("validation reports each violated invariant") {
    StableGraph empty;
    auto errs = validate(empty, 0, 3);
    REQUIRE(errs.size() == 1);
    CHECK(errs[0] == "graph has no vertices");

    StableGraph bad_leg_count = open_stratum(1, 1);
    errs = validate(bad_leg_count, 1, 3);
    REQUIRE(errs.size() == 1);
    CHECK(errs[0] == "expected 3 legs, found 1");

    StableGraph unstable = open_stratum(0, 2);
    errs = validate(unstable, 0, 2);
    REQUIRE(errs.size() == 1);
    CHECK(errs[0] == "unstable vertex 0 (genus 0, valence 2)");

    StableGraph disconnected;
    disconnected.genus = {1, 1};
    disconnected.leg = {0, 1};
    errs = validate(disconnected, 2, 2);
    REQUIRE_FALSE(errs.empty());
    CHECK(errs[0] == "graph is disconnected");

    StableGraph wrong_genus = open_stratum(1, 1);
    errs = validate(wrong_genus, 2, 1);
    REQUIRE(errs.size() == 1);
    CHECK(errs[0].find("genus mismatch") == 0);

    StableGraph bad_refs;
    bad_refs.genus = {0, -1};
    bad_refs.edges = {{0, 5}};
    bad_refs.leg = {-2};
    errs = validate(bad_refs, 1, 1);
    CHECK(errs.size() == 3);  // negative genus, bad edge ref, bad leg ref
}

TEST_CASE("stratum stats") {
    auto st = stratum_stats(theta(), 2, 0);
    CHECK(st.codimension == 3);
    CHECK(st.dimension == 0);
    CHECK(st.genus_zero_count == 2);

    st = stratum_stats(open_stratum(3, 2), 3, 2);
    CHECK(st.codimension == 0);
    CHECK(st.dimension == 8);
    CHECK(st.genus_zero_count == 0);
}

TEST_CASE("canonical keys of reference graphs") {
    CHECK(canonical_key(open_stratum(2, 1)) == "2;1;V=(2);E=();L=(1:0)");
    CHECK(canonical_key(theta()) == "2;0;V=(0,0);E=(0-1,0-1,0-1);L=()");
    CHECK(canonical_key(dumbbell()) == "2;0;V=(0,0);E=(0-0,0-1,1-1);L=()");

    StableGraph b11;
    b11.genus = {0};
    b11.edges = {{0, 0}};
    b11.leg = {0};
    CHECK(canonical_key(b11) == "1;1;V=(0);E=(0-0);L=(1:0)");
}

TEST_CASE("canonical key is invariant under vertex relabeling") {
    // Chain: genus 1 - genus 0 (legs 1, 2) - genus 1.
    StableGraph G;
    G.genus = {1, 0, 1};
    G.edges = {{0, 1}, {1, 2}};
    G.leg = {1, 1};
    G.normalize();
    REQUIRE(is_valid(G, 2, 2));

    auto key = canonical_key(G);
    std::vector<std::vector<int>> perms = {{0, 1, 2}, {2, 1, 0}, {1, 2, 0},
                                           {2, 0, 1}, {0, 2, 1}, {1, 0, 2}};
    for (const auto& p : perms) {
        auto H = relabel_vertices(G, p);
        CHECK(canonical_key(H) == key);
        CHECK(canonical_form(H) == canonical_form(G));
    }
}

TEST_CASE("canonical key distinguishes leg placement") {
    StableGraph together;  // legs 1,2 on one side of a (1,1)-split of genus 2
    together.genus = {1, 1};
    together.edges = {{0, 1}};
    together.leg = {0, 0};

    StableGraph apart;
    apart.genus = {1, 1};
    apart.edges = {{0, 1}};
    apart.leg = {0, 1};

    REQUIRE(is_valid(together, 2, 2));
    REQUIRE(is_valid(apart, 2, 2));
    CHECK(canonical_key(together) != canonical_key(apart));
}

TEST_CASE("automorphism counts") {
    CHECK(automorphism_count(open_stratum(2, 0)) == 1);

    StableGraph irr;  // genus-1 vertex with a loop
    irr.genus = {1};
    irr.edges = {{0, 0}};
    CHECK(automorphism_count(irr) == 2);

    StableGraph split;  // two genus-1 vertices, single edge
    split.genus = {1, 1};
    split.edges = {{0, 1}};
    CHECK(automorphism_count(split) == 2);

    StableGraph banana;  // genus 0 (one leg) = genus 1, double edge
    banana.genus = {0, 1};
    banana.edges = {{0, 1}, {0, 1}};
    banana.leg = {0};
    REQUIRE(is_valid(banana, 2, 1));
    CHECK(automorphism_count(banana) == 2);

    CHECK(automorphism_count(theta()) == 12);
    CHECK(automorphism_count(dumbbell()) == 8);
}

TEST_CASE("automorphism count is invariant under relabeling") {
    auto G = dumbbell();
    auto H = relabel_vertices(G, {1, 0});
    CHECK(automorphism_count(H) == automorphism_count(G));
}
