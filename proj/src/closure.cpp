#include "partlat/closure.hpp"

#include <deque>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace partlat {

namespace {

// Leaders fit in 4 bits each when n <= 16, so the whole canonical form packs
// into one 64-bit key and dedup avoids hashing full arrays.
constexpr int kPackLimit = 16;

std::uint64_t pack_key(const Partition& p) {
    std::uint64_t key = 0;
    for (std::uint16_t v : p.leader_array()) key = (key << 4) | v;
    return key;
}

enum class StopRule { Never, AllAtoms, Target };

// Pair scheduling: every unordered pair is expanded exactly once, entering
// the schedule when the later of its two elements is inserted, as a compact
// range record in one of five queues: partners that are generators, partners
// that are atoms, partners among the first kCore plain elements (the early
// products of the generators), partners among the kRecent most recent plains
// at insertion time, and the remaining bulk.  The queues are served round
// robin, one pair each, so no band starves.  Derivation chains overwhelmingly
// combine a fresh element with a generator, an atom, an early product, or
// another fresh element, so atoms are found orders of magnitude earlier than
// under row-order expansion, while exhaustion still reaches the identical
// final closure set.
class ClosureRunner {
public:
    ClosureRunner(const std::vector<Partition>& phi, std::uint64_t budget, int jobs,
                  StopRule rule, const Partition* target)
        : budget_(budget), jobs_(jobs < 1 ? 1 : jobs), rule_(rule), target_(target) {
        if (phi.empty()) throw std::invalid_argument("closure of an empty set");
        n_ = phi.front().n();
        for (const Partition& p : phi)
            if (p.n() != n_)
                throw std::invalid_argument("closure input members live on different ground sets");
        atoms_needed_ = n_ * (n_ - 1) / 2;
        packed_ = n_ <= kPackLimit;
        seeding_ = true;
        for (const Partition& p : phi) {
            add(p);
            if (stopped_) break;
        }
        seeding_ = false;
    }

    ClosureResult run() {
        run_pairs();
        // a stop rule satisfied inside the final batch resolves the question
        // even when that batch also exhausted the budget
        if (rule_ == StopRule::AllAtoms && atoms_found_ == atoms_needed_) budget_hit_ = false;
        if (rule_ == StopRule::Target && target_found_) budget_hit_ = false;
        ClosureReport report;
        report.pair_ops = pair_ops_;
        report.budget_hit = budget_hit_;
        report.atoms_found = atoms_found_;
        report.closure_size = elems_.size();
        report.pair_ops_exact = true;
        if (budget_hit_)
            report.verdict = Verdict::Unknown;
        else if (rule_ == StopRule::Target)
            report.verdict = target_found_ ? Verdict::Generates : Verdict::NotGenerates;
        else
            report.verdict =
                atoms_found_ == atoms_needed_ ? Verdict::Generates : Verdict::NotGenerates;
        return {std::move(elems_), report};
    }

    bool target_found() const { return target_found_; }

private:
    enum class Src : std::uint8_t { Gens, Atoms, Plains };

    struct PairRange {
        int e;
        Src src;
        int lo, hi;  // half-open window into the source list
    };

    static constexpr int kTiers = 5;
    static constexpr int kCore = 256;
    static constexpr int kRecent = 256;
    static constexpr std::size_t kBatch = 256;

    // Pairs are drawn from the schedule in fixed batches of kBatch regardless
    // of the worker count; jobs only split the meet/join computations of one
    // batch.  The popped pair sequence, the insertion order, and the pair
    // count are therefore identical for every jobs value.
    void run_pairs() {
        std::vector<std::pair<int, int>> batch;
        std::vector<Partition> meets, joins;
        while (!stopped_) {
            batch.clear();
            int x = 0, y = 0;
            while (batch.size() < kBatch && next_pair(x, y)) {
                if (pair_ops_ == budget_) {
                    budget_hit_ = true;
                    break;
                }
                ++pair_ops_;
                batch.push_back({x, y});
            }
            if (batch.empty()) return;
            meets.resize(batch.size());
            joins.resize(batch.size());
            if (jobs_ == 1) {
                for (std::size_t t = 0; t < batch.size(); ++t) {
                    meets[t] = meet(elems_[batch[t].first], elems_[batch[t].second]);
                    joins[t] = join(elems_[batch[t].first], elems_[batch[t].second]);
                }
            } else {
                std::vector<std::thread> pool;
                const std::size_t chunk = (batch.size() + jobs_ - 1) / jobs_;
                for (int w = 0; w < jobs_; ++w) {
                    const std::size_t lo = w * chunk, hi = std::min(batch.size(), lo + chunk);
                    if (lo >= hi) break;
                    pool.emplace_back([&, lo, hi] {
                        for (std::size_t t = lo; t < hi; ++t) {
                            meets[t] = meet(elems_[batch[t].first], elems_[batch[t].second]);
                            joins[t] = join(elems_[batch[t].first], elems_[batch[t].second]);
                        }
                    });
                }
                for (auto& th : pool) th.join();
            }
            for (std::size_t t = 0; t < batch.size() && !stopped_; ++t) {
                add(std::move(meets[t]));
                if (!stopped_) add(std::move(joins[t]));
            }
            if (budget_hit_) return;
        }
    }

    bool pop_tier(int t, int& x, int& y) {
        auto& q = queues_[t];
        while (!q.empty()) {
            PairRange& r = q.front();
            if (r.lo < r.hi) {
                const int other = r.src == Src::Gens    ? gen_idx_[r.lo]
                                  : r.src == Src::Atoms ? atom_idx_[r.lo]
                                                        : plain_idx_[r.lo];
                ++r.lo;
                x = r.e;
                y = other;
                return true;
            }
            q.pop_front();
        }
        return false;
    }

    // Produces the next scheduled pair; false once every pair is expanded.
    bool next_pair(int& x, int& y) {
        for (int step = 0; step < kTiers; ++step) {
            const int t = (rr_ + step) % kTiers;
            if (pop_tier(t, x, y)) {
                rr_ = (t + 1) % kTiers;
                return true;
            }
        }
        return false;
    }

    void add(Partition p) {
        if (packed_) {
            auto [it, fresh] = packed_index_.try_emplace(pack_key(p), elems_.size());
            if (!fresh) return;
        } else {
            auto [it, fresh] = index_.try_emplace(p, elems_.size());
            if (!fresh) return;
        }
        const int e = static_cast<int>(elems_.size());
        const bool atom = p.is_atom();
        if (atom) ++atoms_found_;
        if (rule_ == StopRule::AllAtoms && atoms_found_ == atoms_needed_) stopped_ = true;
        if (rule_ == StopRule::Target && p == *target_) {
            target_found_ = true;
            stopped_ = true;
        }
        elems_.push_back(std::move(p));

        if (!gen_idx_.empty())
            queues_[0].push_back({e, Src::Gens, 0, static_cast<int>(gen_idx_.size())});
        if (seeding_) {
            gen_idx_.push_back(e);
            return;
        }
        if (!atom_idx_.empty())
            queues_[1].push_back({e, Src::Atoms, 0, static_cast<int>(atom_idx_.size())});
        const int np = static_cast<int>(plain_idx_.size());
        const int core_hi = np < kCore ? np : kCore;
        int recent_lo = np - kRecent;
        if (recent_lo < core_hi) recent_lo = core_hi;
        if (core_hi > 0) queues_[2].push_back({e, Src::Plains, 0, core_hi});
        if (recent_lo < np) queues_[3].push_back({e, Src::Plains, recent_lo, np});
        if (core_hi < recent_lo) queues_[4].push_back({e, Src::Plains, core_hi, recent_lo});
        if (atom)
            atom_idx_.push_back(e);
        else
            plain_idx_.push_back(e);
    }

    int n_;
    std::uint64_t budget_;
    int jobs_;
    StopRule rule_;
    const Partition* target_;
    int atoms_needed_;
    bool packed_;
    bool seeding_;
    std::vector<Partition> elems_;
    std::vector<int> gen_idx_, atom_idx_, plain_idx_;
    std::deque<PairRange> queues_[kTiers];
    int rr_ = 0;
    std::unordered_map<std::uint64_t, int> packed_index_;
    std::unordered_map<Partition, int, PartitionHash> index_;
    int atoms_found_ = 0;
    std::uint64_t pair_ops_ = 0;
    bool stopped_ = false;
    bool budget_hit_ = false;
    bool target_found_ = false;
};

}  // namespace

ClosureResult closure(const std::vector<Partition>& phi, std::uint64_t budget, int jobs) {
    return ClosureRunner(phi, budget, jobs, StopRule::Never, nullptr).run();
}

ClosureReport generates(const std::vector<Partition>& phi, int n, std::uint64_t budget, int jobs) {
    if (!phi.empty() && phi.front().n() != n)
        throw std::invalid_argument("generation check against the wrong ground set");
    return ClosureRunner(phi, budget, jobs, StopRule::AllAtoms, nullptr).run().report;
}

Ternary member_of_closure(const Partition& p, const std::vector<Partition>& phi,
                          std::uint64_t budget) {
    if (!phi.empty() && phi.front().n() != p.n())
        throw std::invalid_argument("membership query against the wrong ground set");
    ClosureRunner runner(phi, budget, 1, StopRule::Target, &p);
    ClosureResult result = runner.run();
    if (runner.target_found()) return Ternary::True;
    return result.report.budget_hit ? Ternary::Unknown : Ternary::False;
}

std::vector<Partition> enumerate_all_partitions(int n, int cap) {
    if (n < 1) throw std::invalid_argument("ground set size must be positive");
    if (cap < 1 || n > cap)
        throw std::invalid_argument("n exceeds the enumeration cap of " + std::to_string(cap));
    std::vector<Partition> out;
    out.reserve(bell_number(n));
    std::vector<std::vector<int>> blocks;
    auto rec = [&](auto&& self, int x) -> void {
        if (x > n) {
            out.push_back(Partition::from_blocks(n, blocks));
            return;
        }
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            blocks[b].push_back(x);
            self(self, x + 1);
            blocks[b].pop_back();
        }
        blocks.push_back({x});
        self(self, x + 1);
        blocks.pop_back();
    };
    rec(rec, 1);
    return out;
}

std::uint64_t bell_number(int n) {
    if (n < 0) throw std::invalid_argument("Bell number of a negative index");
    if (n > 25) throw std::invalid_argument("Bell number exceeds 64 bits for n > 25");
    std::vector<std::uint64_t> row{1};
    for (int i = 1; i <= n; ++i) {
        std::vector<std::uint64_t> next{row.back()};
        for (std::uint64_t v : row) next.push_back(next.back() + v);
        row = std::move(next);
    }
    return row.front();
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Generates: return "Generates";
        case Verdict::NotGenerates: return "NotGenerates";
        case Verdict::Unknown: return "Unknown";
    }
    return "?";
}

}  // namespace partlat
