// Machine-checkable derivation scripts: each step names a partition, gives its
// explicit value, and gives a lattice term over previously established names.
// Replay asserts every equality and then checks the cycle-closure goal, which
// certifies generation at sizes far beyond what closure search can reach.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "partlat/quads.hpp"
#include "partlat/term.hpp"

namespace partlat {

struct ProofStep {
    std::string name;
    Partition expected;
    LatticeTerm recipe;             // arity == refs.size()
    std::vector<std::string> refs;  // variable index -> generator or earlier step name
};

// A cyclic vertex order that must cover [n]; once every consecutive edge atom
// is established, all remaining atoms follow from the cycle closure.
struct GenerationGoal {
    std::vector<int> perimeter;
};

struct ProofScript {
    std::string id;
    GeneratorQuad generators;
    std::array<std::string, 4> generator_names{{"alpha", "beta", "gamma", "delta"}};
    std::vector<ProofStep> steps;
    GenerationGoal goal;
};

ProofScript script_oddat(int k);    // k >= 2
ProofScript script_evenat(int k);   // k >= 3
ProofScript script_evenhtwo(int k); // k >= 2
ProofScript script_oddhtwo(int k);  // k >= 3
ProofScript script_family(Family f, int k);

enum class SporadicId { N4, N5, N6, N7 };
ProofScript script_sporadic(SporadicId id);
std::optional<SporadicId> sporadic_from_string(const std::string& s);

// Rebuilds the script matching a quad's provenance, including any relabel
// suffix.  Throws for quads with no script (search results, extensions).
ProofScript script_for_quad(const GeneratorQuad& quad);

// Witness term for the pair (cycle[i], cycle[j]) over the cycle-edge atoms:
// variable t stands for the atom joining cycle[t] and its successor.  The
// term meets the edge-join along the path i -> j with the join along the
// complementary path; for adjacent positions it is the single edge variable.
// Positions are 1-based.
LatticeTerm circle_witness(const std::vector<int>& cycle, int i, int j);

// Atoms (spanning star per block) whose join is p; size equals height(p).
std::vector<Partition> atom_join_decomposition(const Partition& p);

struct ReplayReport {
    bool pass = false;
    std::size_t steps_total = 0;
    std::size_t steps_passed = 0;
    std::optional<std::size_t> failed_step;  // index of the first failing step
    std::string failure;                     // empty when pass
    bool goal_perimeter_ok = false;          // perimeter covers [n] exactly
    bool goal_edges_ok = false;              // every perimeter edge atom established
    std::size_t established_atoms = 0;       // distinct atoms among generators + steps
    bool witnesses_checked = false;
    std::uint64_t witness_evals = 0;
};

// Validates the script (unknown or forward references, duplicate names, arity
// mismatches throw before any evaluation), evaluates each recipe against the
// growing environment, stops at the first mismatch, then checks the goal.
// With check_witnesses every pairwise cycle witness is also evaluated.
ReplayReport run_script(const ProofScript& script, bool check_witnesses = false);

// The 2k-element ladder with no top vertex: generators alpha, beta0, gamma0,
// delta on {a_1..a_k} = {1..k}, {b_1..b_k} = {k+1..2k}; the script derives
// every edge atom and closes the cycle a_1..a_k, b_k..b_1.
ProofScript window_script(int k);  // k >= 2

enum class WindowMode { Auto, Closure, Replay };

// True iff every atom on the 2k-element window lies in the sublattice
// generated by the four ladder partitions.  Closure mode checks this by
// brute force; replay mode runs window_script.  Auto uses closure for
// k <= 6 and replay beyond.
bool window_check_aleph0(int k, WindowMode mode = WindowMode::Auto);

}  // namespace partlat
