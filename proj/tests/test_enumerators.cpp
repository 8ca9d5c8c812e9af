#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "common.hpp"
#include "oracle.hpp"
#include "strata/enumerators.hpp"
#include "strata/generate.hpp"
#include "strata/semantics.hpp"

using namespace strata;

namespace {

std::vector<std::vector<std::string>> names(const ModelSet& ms, const KnowledgeBase& kb) {
    return true_names(ms, kb.atoms());
}

using Names = std::vector<std::vector<std::string>>;

const Names kPi0 = {{"female", "lion", "live_on_land", "mammal", "warm_blooded"},
                    {"lion", "live_on_land", "male", "mammal", "warm_blooded"}};

}  // namespace

TEST_CASE("unit_inst examples") {
    auto chain = parse_kb("a.\nb :- a.\n");
    WorkingProgram w(chain.view());
    PartialInterpretation m(2);
    CHECK(unit_inst(w, m));
    CHECK(m.is_true(0));
    CHECK(m.is_true(1));
    CHECK(w.remaining().empty());

    auto fact = parse_kb("a.");
    WorkingProgram w2(fact.view());
    PartialInterpretation m2(1);
    m2.set(0, Truth::False);
    CHECK_FALSE(unit_inst(w2, m2));

    auto kb = parse_kb("a.\nc :- a, not b.\n");
    WorkingProgram w3(kb.view());
    PartialInterpretation m3(kb.atom_count());
    CHECK(unit_inst(w3, m3));
    CHECK(m3.is_true(id_of(kb, "a")));
    CHECK(m3[id_of(kb, "b")] == Truth::Unknown);
    CHECK(m3[id_of(kb, "c")] == Truth::Unknown);
    auto rest = w3.remaining();
    REQUIRE(rest.size() == 1);
    CHECK(render_rule(kb.atoms(), rest[0]) == "c :- not b.");
}

TEST_CASE("neg_unit_inst examples") {
    auto kb = load_kb("pi0.lp");
    WorkingProgram w(kb.view());
    PartialInterpretation m(kb.atom_count());
    std::vector<AtomId> neg{id_of(kb, "ab1"), id_of(kb, "male")};
    std::sort(neg.begin(), neg.end());
    CHECK(neg_unit_inst(w, neg, m));
    for (auto a : {"lion", "mammal", "warm_blooded", "live_on_land", "female"}) CHECK(m.is_true(id_of(kb, a)));
    CHECK(m.is_false(id_of(kb, "ab1")));
    CHECK(m.is_false(id_of(kb, "male")));

    auto horn = parse_kb("a.\nb :- a.\nc :- d.\n");
    WorkingProgram w1(horn.view()), w2(horn.view());
    PartialInterpretation m1(horn.atom_count()), m2(horn.atom_count());
    CHECK(neg_unit_inst(w1, {}, m1) == unit_inst(w2, m2));
    CHECK(m1 == m2);

    auto clash = parse_kb("a.\nb :- not a.\n");
    WorkingProgram w3(clash.view());
    PartialInterpretation m3(clash.atom_count());
    CHECK_FALSE(neg_unit_inst(w3, std::vector{id_of(clash, "a")}, m3));
}

TEST_CASE("ALL-STABLE1 and ALL-STABLE2 on the examples") {
    auto pi0 = load_kb("pi0.lp");
    CHECK(names(all_stable1(pi0), pi0) == kPi0);
    CHECK(names(all_stable2(pi0), pi0) == kPi0);

    auto pi4 = load_kb("pi4.lp");
    const Names want4 = {{"a", "c", "f"}, {"b", "d"}};
    CHECK(names(all_stable1(pi4), pi4) == want4);
    CHECK(names(all_stable2(pi4), pi4) == want4);

    auto pi2 = load_kb("pi2.lp");
    CHECK(names(all_stable2(pi2), pi2) == Names{{"b"}});
    CHECK(names(all_stable1(pi2), pi2) == Names{{"b"}});

    auto horn = parse_kb("a.\nb :- a.\nc :- d.\n");
    CHECK(names(all_stable1(horn), horn) == Names{{"a", "b"}});
    CHECK(names(all_stable2(horn), horn) == Names{{"a", "b"}});
}

TEST_CASE("the caller's program is untouched") {
    auto kb = load_kb("pi0.lp");
    const auto before = kb;
    all_stable1(kb);
    all_stable2(kb);
    CHECK(kb == before);
}

TEST_CASE("flat enumerators match the oracle, obey their bounds and dedupe") {
    gen::Rng rng(41);
    for (int trial = 0; trial < 1000; ++trial) {
        auto kb = gen::mixed_program(rng, gen::draw_params(rng, 12, 25));
        const auto want = oracle::stable_sets(kb);
        const auto s1 = all_stable1(kb), s2 = all_stable2(kb);
        REQUIRE(oracle::sorted_sets(s1) == want);
        REQUIRE(oracle::sorted_sets(s2) == want);
        CHECK(s1 == s2);
        CHECK(s1 == brute_force_stable_models(kb));
        const auto k = negated_atoms(kb.view()).size();
        const auto c = non_horn_rules(kb.view()).size();
        CHECK(want.size() <= (std::uint64_t{1} << k));
        CHECK(want.size() <= (std::uint64_t{1} << c));
        auto sets = oracle::sorted_sets(s2);
        CHECK(std::adjacent_find(sets.begin(), sets.end()) == sets.end());
    }
}

TEST_CASE("parallel guess loops give the serial result") {
    gen::Rng rng(43);
    for (int trial = 0; trial < 200; ++trial) {
        auto kb = gen::mixed_program(rng, gen::draw_params(rng, 14, 30));
        CHECK(all_stable1(kb, ExecPolicy{true}) == all_stable1(kb));
        CHECK(all_stable2(kb, ExecPolicy{true}) == all_stable2(kb));
    }
}

TEST_CASE("engine selection") {
    CHECK(choose_engine(1, 2) == Engine::AllStable1);
    CHECK(choose_engine(2, 2) == Engine::AllStable2);
    CHECK(choose_engine(3, 2) == Engine::AllStable2);
    CHECK(parse_engine("as1") == Engine::AllStable1);
    CHECK(engine_name(Engine::Brute) == "brute");
    CHECK_THROWS_AS(parse_engine("fast"), std::invalid_argument);
    auto kb = load_kb("pi4.lp");
    for (auto e : {Engine::Auto, Engine::AllStable1, Engine::AllStable2, Engine::Brute})
        CHECK(names(enumerate_stable(kb.view(), e), kb) == Names{{"a", "c", "f"}, {"b", "d"}});
}

TEST_CASE("guess width cap") {
    std::string text;
    for (int i = 0; i < 45; ++i) text += "a" + std::to_string(i) + " :- not b" + std::to_string(i) + ".\n";
    auto kb = parse_kb(text);
    CHECK_THROWS_AS(all_stable1(kb), CapExceeded);
    CHECK_THROWS_AS(all_stable2(kb), CapExceeded);
}
