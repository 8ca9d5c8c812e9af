#pragma once

// Component-wise stable model computation over the super dependency graph:
// full enumeration, nogood filtering, queries with early stop, a single-model
// backtracking mode and incremental re-solving.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "strata/enumerators.hpp"
#include "strata/graphs.hpp"
#include "strata/kb.hpp"
#include "strata/model_set.hpp"

namespace strata {

struct AasOptions {
    Engine engine = Engine::Auto;
    /// Keep rules whose positive body holds a false child atom, as the
    /// textbook Convert does. Off by default: such rules can never fire.
    bool strict_convert = false;
    ExecPolicy policy{};
    std::size_t brute_cap = kDefaultBruteForceCap;
    std::uint64_t omega_cap = kDefaultOmegaCap;
};

struct NodeStats {
    std::vector<AtomId> atoms;
    NodeOmega omega;
    Engine engine = Engine::Auto;  // enumerator used at this node
    std::size_t candidates = 0;    // |M_c(s)|
    std::size_t models = 0;        // |M_s|
    bool evaluated = false;
    bool recomputed = false;
};

struct AasResult {
    ModelSet models;  // total over every atom, sorted
    OmegaIndex omega;
    std::vector<NodeStats> nodes;  // parallel to the super graph's nodes
    bool stopped_early = false;    // a component had no model
};

/// Pi_{s,m}: drops child atoms true in `m` from positive bodies, deletes rules
/// with `not P` for P true in `m`, erases `not P` for P false in `m` outside
/// `s`. Without `strict`, rules whose positive body holds a false child atom
/// are deleted too. Atoms keep their ids.
KnowledgeBase convert(const KnowledgeBase& kb, std::span<const std::size_t> pi_s, const PartialInterpretation& m,
                      std::span<const AtomId> s, bool strict = false);

AasResult aas_solve(const KnowledgeBase& kb, std::span<const Nogood> nogoods = {}, const AasOptions& opts = {});

/// Depth-first search for one stable model, one submodel per node in
/// topological order, backtracking on dead ends.
std::optional<PartialInterpretation> solve_one(const KnowledgeBase& kb, const AasOptions& opts = {});

enum class QueryMode { Cautious, Brave };

struct QueryResult {
    bool answer = false;
    bool early_stop = false;          // decided inside P's rooted subgraph
    std::size_t nodes_evaluated = 0;  // before the decision
    std::size_t total_nodes = 0;
};

/// Cautious: P is true in every stable model (vacuously yes when there is
/// none). Brave: P is true in at least one.
QueryResult query_atom(const KnowledgeBase& kb, AtomId p, QueryMode mode, const AasOptions& opts = {});

/// Keeps per-component model sets between solves and recomputes only the
/// components whose rooted subgraph changed.
class IncrementalSolver {
public:
    explicit IncrementalSolver(KnowledgeBase kb, std::vector<Nogood> nogoods = {}, AasOptions opts = {});
    ~IncrementalSolver();
    IncrementalSolver(IncrementalSolver&&) noexcept;
    IncrementalSolver& operator=(IncrementalSolver&&) noexcept;

    const KnowledgeBase& kb() const { return kb_; }
    const AasResult& result() const { return result_; }

    /// Adds the rules of `added` (atoms matched by name, new ones appended)
    /// and re-solves.
    const AasResult& update_and_resolve(const KnowledgeBase& added);
    const AasResult& update_and_resolve(std::span<const Rule> added_rules);

private:
    void solve();

    struct Cache;
    KnowledgeBase kb_;
    std::vector<Nogood> nogoods_;
    AasOptions opts_;
    std::unique_ptr<Cache> cache_;
    AasResult result_;
};

/// Names of the atoms of every node that was recomputed in `r`, one string
/// per node ("a,b").
std::vector<std::string> recomputed_nodes(const AasResult& r, const AtomTable& atoms);

}  // namespace strata
