#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <memory>

#include "common.hpp"
#include "oracle.hpp"
#include "strata/generate.hpp"
#include "strata/semantics.hpp"

using namespace strata;

namespace {

std::vector<AtomId> ids(const KnowledgeBase& kb, std::vector<std::string> names) {
    std::vector<AtomId> out;
    for (const auto& n : names) out.push_back(id_of(kb, n));
    std::sort(out.begin(), out.end());
    return out;
}

const std::vector<std::string> kS1 = {"lion", "mammal", "warm_blooded", "live_on_land", "female"};
const std::vector<std::string> kS2 = {"lion", "mammal", "warm_blooded", "live_on_land", "male"};

// Stability check written out directly: every rule satisfied, every
// true atom derivable with S as the negation oracle.
bool satisfied_and_proved(const KnowledgeBase& kb, std::uint64_t s) {
    for (const auto& r : kb.rules()) {
        bool body = true;
        for (auto a : r.pos) body = body && (s >> a & 1);
        for (auto a : r.neg) body = body && !(s >> a & 1);
        if (body && !(s >> r.head & 1)) return false;
    }
    const auto proved = oracle::reduct_least(kb.rules(), s);
    return (s & ~proved) == 0;
}

}  // namespace

TEST_CASE("gl_transform of Pi_0 w.r.t. S1") {
    auto kb = load_kb("pi0.lp");
    auto t = gl_transform(kb, ids(kb, kS1));
    CHECK(render(t) ==
          "warm_blooded :- mammal.\n"
          "live_on_land :- mammal.\n"
          "female :- mammal.\n"
          "mammal :- dolphin.\n"
          "ab1 :- dolphin.\n"
          "mammal :- lion.\n"
          "lion.\n");
    for (const auto& r : t.rules()) CHECK(r.neg.empty());
}

TEST_CASE("gl_transform edge cases") {
    auto horn = parse_kb("a.\nb :- a.\n");
    CHECK(gl_transform(horn, std::vector<AtomId>{0, 1}) == horn);
    auto kb = parse_kb("b :- not a.");
    CHECK(gl_transform(kb, std::vector{id_of(kb, "a")}).rules().empty());
}

TEST_CASE("horn_minimal_model examples") {
    auto kb = load_kb("pi0.lp");
    auto t = gl_transform(kb, ids(kb, kS1));
    CHECK(horn_minimal_model(t) == ids(kb, {"lion", "mammal", "warm_blooded", "live_on_land", "female"}));
    CHECK(horn_minimal_model(KnowledgeBase{}).empty());

    auto chain = parse_kb("a.\nb :- a.\nc :- d.\n");
    const auto least = horn_minimal_model(chain);
    CHECK(least == ids(chain, {"a", "b"}));
    // confirm against the smallest model found by subset search
    std::uint64_t best = ~0ull;
    for (std::uint64_t s = 0; s < 16; ++s) {
        bool model = true;
        for (const auto& r : chain.rules()) model = model && (!satisfies_body(to_mask(4, oracle::bits(s, 4)), r) || (s >> r.head & 1));
        if (model && std::popcount(s) < std::popcount(best)) best = s;
    }
    CHECK(oracle::bits(best, 4) == least);
    CHECK_THROWS_AS(horn_minimal_model(parse_kb("a :- not b.")), std::invalid_argument);
}

TEST_CASE("worklist and round-robin fixpoints agree") {
    gen::Rng rng(5);
    for (int trial = 0; trial < 500; ++trial) {
        auto p = gen::draw_params(rng, 30, 60);
        p.negative = 0;
        auto kb = gen::mixed_program(rng, p);
        const auto m = horn_minimal_model(kb);
        CHECK(m == horn_minimal_model_naive(kb.view()));
        const auto mask = to_mask(kb.atom_count(), m);
        for (const auto& r : kb.rules()) CHECK(satisfies_rule(mask, r));
    }
}

TEST_CASE("is_stable examples") {
    auto kb = load_kb("pi0.lp");
    CHECK(is_stable(kb, ids(kb, kS1)));
    CHECK(is_stable(kb, ids(kb, kS2)));
    auto ba = parse_kb("b :- not a.");
    CHECK_FALSE(is_stable(ba, std::vector{id_of(ba, "a")}));
    CHECK(is_stable(ba, std::vector{id_of(ba, "b")}));
    auto odd = parse_kb("a :- not a.");
    CHECK_FALSE(is_stable(odd, std::vector<AtomId>{}));
    CHECK_FALSE(is_stable(odd, std::vector<AtomId>{0}));
}

TEST_CASE("has_proof examples") {
    auto kb = load_kb("pi0.lp");
    const auto s1 = ids(kb, kS1);
    CHECK(has_proof(kb, s1, id_of(kb, "female")));
    CHECK_FALSE(has_proof(kb, s1, id_of(kb, "dolphin")));
    auto lonely = parse_kb("a :- b.\nc.\n");
    CHECK_FALSE(has_proof(lonely, std::vector<AtomId>{}, id_of(lonely, "b")));
}

TEST_CASE("explain_stability names the failing rule or atom") {
    auto kb = load_kb("pi0.lp");
    auto v = explain_stability(kb, ids(kb, {"lion"}));
    CHECK_FALSE(v.stable);
    REQUIRE(v.unsatisfied_rule);
    CHECK(render_rule(kb.atoms(), kb.rules()[*v.unsatisfied_rule]) == "mammal :- lion.");
    auto w = explain_stability(kb, ids(kb, {"lion", "mammal", "warm_blooded", "live_on_land", "female", "dolphin"}));
    CHECK_FALSE(w.stable);
    CHECK(w.unsatisfied_rule);  // ab1 :- dolphin
    auto x = explain_stability(parse_kb("a :- b.\nb :- a.\n"), std::vector<AtomId>{0, 1});
    REQUIRE(x.unproved_atom);
    CHECK(explain_stability(KnowledgeBase{}, std::vector<AtomId>{}).stable);
}

TEST_CASE("brute force examples") {
    auto kb = load_kb("pi0.lp");
    CHECK(oracle::sorted_sets(brute_force_stable_models(kb)) ==
          std::vector<std::vector<AtomId>>{ids(kb, kS1), ids(kb, kS2)});
    auto pi2 = load_kb("pi2.lp");
    CHECK(true_names(brute_force_stable_models(pi2), pi2.atoms()) == std::vector<std::vector<std::string>>{{"b"}});
    CHECK(brute_force_stable_models(parse_kb("a :- not a.")).empty());
    auto big = gen::mixed_program(*std::make_unique<gen::Rng>(1), {21, 5, 2, 0.5, 0.1});
    CHECK_THROWS_AS(brute_force_stable_models(big), CapExceeded);
    CHECK_NOTHROW(brute_force_stable_models(big, 21));
}

TEST_CASE("stability agrees with the satisfaction-plus-proof characterization") {
    gen::Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        auto kb = gen::mixed_program(rng, gen::draw_params(rng, 12, 20));
        const auto n = kb.atom_count();
        for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
            const auto set = oracle::bits(s, n);
            const bool stable = is_stable(kb, set);
            REQUIRE(stable == satisfied_and_proved(kb, s));
            REQUIRE(stable == (oracle::reduct_least(kb.rules(), s) == s));
            if (stable) {
                for (AtomId a : set) CHECK(has_proof(kb, set, a));
            }
        }
    }
}

TEST_CASE("brute force matches the oracle and returns minimal models") {
    gen::Rng rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        auto kb = gen::mixed_program(rng, gen::draw_params(rng, 10, 16));
        const auto got = brute_force_stable_models(kb);
        CHECK(oracle::sorted_sets(got) == oracle::stable_sets(kb));
        CHECK(got == brute_force_stable_models(kb, kDefaultBruteForceCap, ExecPolicy{true}));
        const auto n = kb.atom_count();
        for (const auto& m : got) {
            auto mask = to_mask(n, m.true_atoms());
            CHECK(is_model(kb.view(), mask));
            // no proper subset is a model
            std::uint64_t s = 0;
            for (AtomId a : m.true_atoms()) s |= std::uint64_t{1} << a;
            for (std::uint64_t sub = s; sub; sub = (sub - 1) & s) {
                const auto smaller = s & ~sub;
                CHECK_FALSE(is_model(kb.view(), to_mask(n, oracle::bits(smaller, n))));
            }
        }
    }
}
