#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "common.hpp"
#include "oracle.hpp"
#include "strata/firstorder.hpp"
#include "strata/generate.hpp"

using namespace strata;

namespace {

using Names = std::vector<std::vector<std::string>>;

fo::Program load_fo(const std::string& name) { return fo::parse_program(read_data(name)); }

std::set<std::string> rule_texts(const KnowledgeBase& kb) {
    std::set<std::string> out;
    for (const auto& r : kb.rules()) out.insert(render_rule(kb.atoms(), r));
    return out;
}

std::vector<std::vector<std::string>> ground_nogoods(const fo::Program& p) {
    std::vector<std::vector<std::string>> out;
    for (const auto& ng : p.nogoods) {
        std::vector<std::string> v;
        for (const auto& a : ng) v.push_back(p.atom_name(a));
        out.push_back(v);
    }
    return out;
}

}  // namespace

TEST_CASE("parsing first-order programs") {
    auto p = load_fo("pi5.lp");
    CHECK(p.rules.size() == 13);
    CHECK(p.constants == std::vector<std::string>{"flipper", "bigbird"});
    CHECK_FALSE(p.is_ground());
    CHECK(p.render_rule(p.rules[1]) == "live_on_land(X) :- mammal(X), not ab1(X).");
    CHECK(p.render_rule(p.rules[7]) == "dolphin(flipper).");
    CHECK_THROWS_AS(fo::parse_program("p(a).\nq :- p.\n"), ParseError);
    CHECK_THROWS_AS(fo::parse_program("#nogood p(X)."), ParseError);
    auto g = fo::parse_program("p(a, b).\nq :- p(a, b).\n#nogood q p(a,b).\n");
    CHECK(g.is_ground());
    REQUIRE(g.nogoods.size() == 1);
    CHECK(g.atom_name(g.nogoods[0][1]) == "p(a,b)");
}

TEST_CASE("safety") {
    CHECK(fo::check_safe(load_fo("pi5.lp")).empty());
    auto v = fo::check_safe(fo::parse_program("p(X) :- not q(X)."));
    REQUIRE(v.size() == 1);
    CHECK(v[0].variable == "X");
    auto w = fo::check_safe(fo::parse_program("p(X) :- q(X), not r(X, Y)."));
    REQUIRE(w.size() == 1);
    CHECK(w[0].variable == "Y");
    CHECK(w[0].rule == 0);
    CHECK_THROWS_AS(fo::faas_solve(fo::parse_program("q(a).\np(X) :- not q(X).")), fo::UnsafeProgram);
}

TEST_CASE("grounding examples") {
    auto p = load_fo("pi5.lp");
    auto kb = fo::ground(p);
    // 11 one-variable rules times 2 constants, plus 2 facts
    CHECK(kb.rules().size() == 24);
    auto texts = rule_texts(kb);
    CHECK(texts.count("mammal(flipper) :- dolphin(flipper)."));
    CHECK(texts.count("mammal(bigbird) :- dolphin(bigbird)."));
    for (const auto& r : p.rules) CHECK(fo::instance_count(p, r) == (r.variables.empty() ? 1u : 2u));

    auto prop = fo::parse_program("a :- not b.\nb :- not a.\n");
    CHECK(render(fo::ground(prop)) == "a :- not b.\nb :- not a.\n");

    auto small = fo::parse_program("p(X) :- q(X).\nq(a).\nq(b).\n");
    auto g = fo::ground(small);
    CHECK(rule_texts(g) == std::set<std::string>{"p(a) :- q(a).", "p(b) :- q(b).", "q(a).", "q(b)."});
}

TEST_CASE("grounding is idempotent on ground programs") {
    auto p = load_fo("pi5.lp");
    auto once = fo::ground(p);
    auto again = fo::ground(fo::parse_program(render(once)));
    CHECK(rule_texts(again) == rule_texts(once));
}

TEST_CASE("guided grounding keeps only derivable instances and the same models") {
    auto p = fo::parse_program("p(X, Y) :- q(X), q(Y), not r(X).\nq(a).\nq(b).\nr(a).\ns(c).\n");
    auto naive = fo::ground(p);
    auto guided = fo::ground(p, {true});
    CHECK(naive.rules().size() == 9 + 4);
    CHECK(guided.rules().size() == 4 + 4);
    CHECK(oracle::names_of(oracle::stable_sets(naive), naive.atoms()) ==
          oracle::names_of(oracle::stable_sets(guided), guided.atoms()));
}

TEST_CASE("predicate graph") {
    auto p = load_fo("pi5.lp");
    auto sg = scc_condense(fo::predicate_graph(p));
    CHECK(sg.size() == 11);
    std::set<std::string> labels;
    for (const auto& n : sg.nodes) labels.insert(component_label(n, p.predicates));
    CHECK(labels.count("female,male"));

    auto loop = fo::predicate_graph(fo::parse_program("p(X) :- p(X)."));
    REQUIRE(loop.edges.size() == 1);
    CHECK(loop.edges[0].from == loop.edges[0].to);
    CHECK(loop.edges[0].sign == Sign::Positive);

    auto q = fo::parse_program("p(X) :- not q(X), r(X).");
    auto g = fo::predicate_graph(q);
    REQUIRE(g.edges.size() == 2);
    std::set<std::tuple<std::string, std::string, Sign>> e;
    for (const auto& x : g.edges) e.emplace(g.names[x.from], g.names[x.to], x.sign);
    CHECK(e == std::set<std::tuple<std::string, std::string, Sign>>{{"q", "p", Sign::Negative},
                                                                    {"r", "p", Sign::Positive}});
}

TEST_CASE("FAAS on Pi_5") {
    auto p = load_fo("pi5.lp");
    auto r = fo::faas_solve(p);
    const auto want = oracle::stable_names(oracle::ground_by_hand(p));
    REQUIRE(want.size() == 2);
    CHECK(fo::model_names(r) == want);
    for (const auto& m : want) {
        CHECK(std::binary_search(m.begin(), m.end(), "fly(bigbird)"));
        CHECK_FALSE(std::binary_search(m.begin(), m.end(), "live_on_land(flipper)"));
    }
    CHECK(std::binary_search(want[0].begin(), want[0].end(), "female(flipper)") !=
          std::binary_search(want[1].begin(), want[1].end(), "female(flipper)"));

    std::size_t mammal = r.nodes.size();
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        CHECK(r.nodes[i].foreign_atoms == 0);
        if (r.nodes[i].predicates == std::vector<std::string>{"mammal"}) mammal = i;
    }
    REQUIRE(mammal < r.nodes.size());
    CHECK(r.nodes[mammal].stratified_fragment);
    CHECK(r.nodes[mammal].models == 1);

    fo::FaasOptions guided;
    guided.grounding.guided = true;
    CHECK(fo::model_names(fo::faas_solve(p, guided)) == want);
}

TEST_CASE("FAAS on ground input equals AAS") {
    auto text = read_data("pi4.lp");
    auto r = fo::faas_solve(fo::parse_program(text));
    auto kb = parse_kb(text);
    CHECK(fo::model_names(r) == true_names(aas_solve(kb).models, kb.atoms()));
}

TEST_CASE("FAAS matches the ground oracle on random safe programs") {
    gen::Rng rng(83);
    for (int trial = 0; trial < 300; ++trial) {
        gen::FoParams fp;
        fp.constants = 1 + trial % 3;
        auto p = gen::fo_program(rng, fp);
        REQUIRE(fo::check_safe(p).empty());
        if (trial % 5 == 0) {
            // a ground nogood over a random Herbrand atom
            fo::Atom a{0, {}};
            for (std::size_t k = 0; k < p.arity[0]; ++k) a.args.push_back({0, false});
            p.nogoods.push_back({a});
        }
        const auto want = oracle::stable_names(oracle::ground_by_hand(p), ground_nogoods(p));
        for (bool guided : {false, true}) {
            fo::FaasOptions o;
            o.grounding.guided = guided;
            auto r = fo::faas_solve(p, o);
            REQUIRE(fo::model_names(r) == want);
            for (const auto& n : r.nodes) CHECK(n.foreign_atoms == 0);
        }
        auto naive = fo::ground(p), guided = fo::ground(p, {true});
        CHECK(oracle::names_of(oracle::stable_sets(naive), naive.atoms()) ==
              oracle::names_of(oracle::stable_sets(guided), guided.atoms()));
    }
}
