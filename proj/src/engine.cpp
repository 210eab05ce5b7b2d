#include "stateq/engine.hpp"

#include <condition_variable>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "stateq/linear.hpp"
#include "stateq/realize.hpp"
#include "stateq/refine.hpp"

namespace stateq {

std::string EngineStats::branching_avg() const {
  if (cegar_steps == 0) return "0.000";
  Int scaled = Int(branching_total) * 1000 / Int(cegar_steps);
  std::ostringstream os;
  os << scaled / 1000 << ".";
  Int frac = scaled % 1000;
  os << (frac < 100 ? frac < 10 ? "00" : "0" : "") << frac;
  return os.str();
}

namespace {

struct Job {
  ConstraintFamily family;
  TransitionVector x;
  std::vector<NodeIndex> sigma;
  TransitionVector r;
  Marking m_hat;  // marking after sigma
  std::int64_t family_id = -1;  // jump family to advance once processed
};

struct JumpFamilyJobs {
  JumpFamily enumerator;
  TransitionVector x;
  std::vector<NodeIndex> sigma;
  TransitionVector r;
  Marking m_hat;
};

using JobKey = std::tuple<ConstraintFamily, TransitionVector,
                          std::vector<NodeIndex>, TransitionVector>;

class EngineRun {
 public:
  EngineRun(const ReachabilityProblem& problem, const EngineConfig& config)
      : problem_(problem),
        net_(*problem.net),
        config_(config),
        backend_(config.backend ? *config.backend : builtin_ilp_backend()),
        base_(build_state_equation(problem)) {}

  Outcome run() {
    {
      std::unique_lock lk(mu_);
      Job seed;
      seed.m_hat = problem_.initial;
      enqueued_jobs_.insert(key_of(seed));
      enqueue(std::move(seed), lk);
    }
    if (config_.workers <= 1) {
      worker_loop();
    } else {
      std::vector<std::thread> pool;
      for (unsigned i = 0; i < config_.workers; ++i)
        pool.emplace_back([this] { worker_loop(); });
      for (auto& th : pool) th.join();
    }

    Outcome out;
    out.stats = stats_;
    if (witness_) {
      out.verdict = Outcome::Verdict::reachable;
      out.witness = *witness_;
    } else if (budget_event_) {
      out.verdict = Outcome::Verdict::inconclusive;
      out.reason = budget_reason_;
      out.diagnostics = build_report(problem_, collector_);
    } else {
      out.verdict = Outcome::Verdict::unreachable;
      out.diagnostics = build_report(problem_, collector_);
    }
    return out;
  }

 private:
  void worker_loop() {
    std::unique_lock lk(mu_);
    for (;;) {
      if (stop_) return;
      if (!queue_.empty()) {
        Job job = std::move(queue_.begin()->second);
        queue_.erase(queue_.begin());
        ++busy_;
        process(std::move(job), lk);
        --busy_;
        cv_.notify_all();
        continue;
      }
      if (busy_ == 0) {
        stop_ = true;
        cv_.notify_all();
        return;
      }
      cv_.wait(lk);
    }
  }

  // Processes one dequeued partial solution. The lock is held on entry and
  // exit and released around solver and search calls.
  void process(Job job, std::unique_lock<std::mutex>& lk) {
    if (++stats_.cegar_steps > config_.max_steps) {
      poison("cegar step limit");
      stop_ = true;
      cv_.notify_all();
      return;
    }
    std::uint64_t spawned = 0;
    process_inner(job, spawned, lk);
    if (job.family_id >= 0) spawned += spawn_family_child(job.family_id, lk);
    stats_.branching_total += spawned;
    if (spawned > stats_.branching_max) stats_.branching_max = spawned;
  }

  void process_inner(Job& job, std::uint64_t& spawned,
                     std::unique_lock<std::mutex>& lk) {
    // (a) jumps are transformed away right before increment constraints are
    // added (only then: an eager transformation would bound the family to the
    // cone above its own minimal solution and cut off every deeper jump)
    if (family_has_jumps(job.family) && !job.r.empty()) {
      if (config_.use_memo && !solved_families_.insert(job.family).second) {
        ++stats_.memo_family_skips;
        return;
      }
      SolveOutcome z = solve(job.family, lk);
      if (z.kind == SolveOutcome::Kind::budget_exceeded) {
        poison("ilp budget");
        return;
      }
      if (z.kind == SolveOutcome::Kind::infeasible) return;
      job.family = transform_jumps(job.family, z.solution);
    }

    // (b) increment constraints from the stuck remainder
    std::vector<std::pair<SccTriple, Int>> triple_info;
    ConstraintFamily delta;
    bool delta_new = false;
    if (!job.r.empty()) {
      std::vector<SccTriple> triples =
          build_dependency_graph(net_, job.m_hat, job.r);
      TransitionVector sigma_parikh = parikh(job.sigma);
      for (SccTriple& triple : triples) {
        Int n = estimate_tokens(triple, net_, job.m_hat, job.r);
        auto c = make_increment_constraint(triple.places, n, sigma_parikh,
                                           job.r, net_);
        if (!c) {
          record_failure(FailureReason::no_producer, triple, n, job);
          return;  // nothing can feed these places; drop the partial solution
        }
        if (!family_contains(job.family, *c)) delta_new = true;
        delta.push_back(std::move(*c));
        triple_info.emplace_back(std::move(triple), std::move(n));
      }
      delta = canonical_family(std::move(delta));
      if (!delta_new) {
        // The needed constraints are already present: the previous increment
        // failed to make this remainder fireable and re-adding changes nothing.
        for (const auto& [triple, n] : triple_info)
          record_failure(FailureReason::pruned_no_progress, triple, n, job);
        return;
      }
    }

    // (c) memoization of solved constraint families (optimization 5)
    ConstraintFamily refined = family_union(job.family, delta);
    if (config_.use_memo && !solved_families_.insert(refined).second) {
      ++stats_.memo_family_skips;
      return;
    }

    // (d) minimal solution of the refined system
    if (delta_new) ++stats_.increment_refinements;
    SolveOutcome solved = solve(refined, lk);
    if (solved.kind == SolveOutcome::Kind::budget_exceeded) {
      poison("ilp budget");
      return;
    }
    if (solved.kind == SolveOutcome::Kind::infeasible) {
      if (!triple_info.empty()) {
        for (const auto& [triple, n] : triple_info)
          record_failure(FailureReason::infeasible_after_add, triple, n, job);
      } else if (job.family.empty() && job.r.empty()) {
        collector_.mark_state_equation_infeasible();
      }
      return;
    }
    const TransitionVector& y = solved.solution;
    if (omega_compare(y, job.x) == std::strong_ordering::less)
      throw std::logic_error("refined solution is smaller than its parent");

    // (e) lazy jump children over the transitions that grew past the parent
    std::vector<std::pair<NodeIndex, Int>> candidates;
    for (const auto& [t, v] : y.entries())
      if (v > job.x.at(t)) candidates.emplace_back(t, v);
    if (!candidates.empty()) {
      families_.push_back({JumpFamily(job.family, std::move(candidates)), job.x,
                           job.sigma, job.r, job.m_hat});
      spawned +=
          spawn_family_child(static_cast<std::int64_t>(families_.size()) - 1, lk);
    }

    // (f) realization search, extending sigma when it fits under y
    TransitionVector sigma_parikh = parikh(job.sigma);
    bool rooted_at_sigma = sigma_parikh.leq(y);
    Marking root = rooted_at_sigma ? job.m_hat : problem_.initial;
    std::vector<NodeIndex> prefix =
        rooted_at_sigma ? job.sigma : std::vector<NodeIndex>{};
    TransitionVector remaining = rooted_at_sigma ? y.minus(sigma_parikh) : y;

    RealizeOptions opts;
    opts.use_stubborn = config_.use_stubborn;
    opts.use_subtree_cut = config_.use_subtree_cut;
    opts.node_budget = config_.realize_node_budget;
    lk.unlock();
    RealizeResult rr = realize(net_, root, prefix, remaining, opts);
    WitnessCheck check;
    if (rr.full) check = validate_witness(problem_, *rr.full);
    lk.lock();
    ++stats_.realize_calls;
    stats_.search_nodes += rr.nodes;
    if (rr.truncated) poison("realize node budget");
    if (rr.full) {
      if (!check.ok())
        throw std::logic_error("engine produced an invalid witness: " +
                               check.describe(net_));
      if (!witness_) witness_ = *rr.full;
      stop_ = true;
      cv_.notify_all();
      return;
    }

    bool prunable = config_.use_prune && delta_new && rooted_at_sigma &&
                    job.x.leq(y);
    TransitionVector y_invariant = prunable ? y.minus(job.x) : TransitionVector{};
    for (const RealizeLeaf& leaf : rr.leaves) {
      if (prunable) {
        PruneVerdict verdict =
            check_prune(net_, problem_.initial, job.sigma, job.r, y_invariant, leaf);
        if (verdict != PruneVerdict::keep) {
          ++stats_.pruned_leaves;
          for (const auto& [triple, n] : triple_info)
            record_failure(FailureReason::pruned_no_progress, triple, n, job);
          continue;
        }
      }
      Job child;
      child.family = refined;
      child.x = y;
      child.sigma = leaf.fired;
      child.r = leaf.remaining;
      child.m_hat = leaf.marking;
      JobKey key = key_of(child);
      if (config_.use_memo) {
        if (enqueued_jobs_.count(key)) {
          ++stats_.memo_job_skips;
          continue;
        }
        enqueued_jobs_.insert(std::move(key));
      }
      if (!enqueue(std::move(child), lk)) return;
      ++spawned;
    }
  }

  // Enqueues the next not-yet-seen child of a jump family; returns how many
  // jobs were spawned (0 or 1).
  std::uint64_t spawn_family_child(std::int64_t id,
                                   std::unique_lock<std::mutex>&) {
    JumpFamilyJobs& fam = families_.at(static_cast<std::size_t>(id));
    for (;;) {
      std::optional<ConstraintFamily> family = fam.enumerator.next();
      if (!family) return 0;
      Job child;
      child.family = std::move(*family);
      child.x = fam.x;
      child.sigma = fam.sigma;
      child.r = fam.r;
      child.m_hat = fam.m_hat;
      child.family_id = id;
      JobKey key = key_of(child);
      if (config_.use_memo) {
        if (enqueued_jobs_.count(key)) {
          ++stats_.memo_job_skips;
          continue;  // identical job already seen; try the next subset
        }
        enqueued_jobs_.insert(std::move(key));
      }
      if (!enqueue_locked(std::move(child))) return 0;
      ++stats_.jump_children;
      return 1;
    }
  }

  SolveOutcome solve(const ConstraintFamily& family,
                     std::unique_lock<std::mutex>& lk) {
    LinearSystem sys;
    sys.var_count = base_.var_count;
    sys.rows = base_.rows;
    append_rows(sys.rows, family);
    lk.unlock();
    SolveOutcome out = backend_.solve_omega_min(sys, config_.ilp_budget);
    lk.lock();
    ++stats_.ilp_calls;
    return out;
  }

  bool enqueue(Job job, std::unique_lock<std::mutex>&) {
    return enqueue_locked(std::move(job));
  }

  bool enqueue_locked(Job job) {
    if (queue_.size() >= config_.max_queue) {
      poison("queue limit");
      return false;
    }
    Int priority = job.x.sum();
    queue_.emplace(std::make_pair(std::move(priority), seq_++), std::move(job));
    ++stats_.partial_solutions;
    cv_.notify_one();
    return true;
  }

  void record_failure(FailureReason reason, const SccTriple& triple,
                      const Int& n, const Job& job) {
    FailedConstraintRecord rec;
    rec.places = triple.places;
    rec.inner_transitions = triple.inner_transitions;
    rec.dependent_transitions = triple.dependent_transitions;
    rec.tokens_missing = n;
    rec.stuck_prefix = job.sigma;
    rec.reason = reason;
    rec.remainder_support = job.r.support();
    collector_.record(std::move(rec));
  }

  void poison(std::string_view reason) {
    budget_event_ = true;
    if (budget_reason_.empty()) budget_reason_ = reason;
  }

  static JobKey key_of(const Job& job) {
    return {job.family, job.x, job.sigma, job.r};
  }

  const ReachabilityProblem& problem_;
  const PetriNet& net_;
  const EngineConfig& config_;
  const IlpBackend& backend_;
  LinearSystem base_;

  std::mutex mu_;
  std::condition_variable cv_;
  std::map<std::pair<Int, std::uint64_t>, Job> queue_;
  std::uint64_t seq_ = 0;
  std::set<ConstraintFamily> solved_families_;
  std::set<JobKey> enqueued_jobs_;
  std::vector<JumpFamilyJobs> families_;
  DiagnosticsCollector collector_;
  EngineStats stats_;
  bool budget_event_ = false;
  std::string budget_reason_;
  std::optional<std::vector<NodeIndex>> witness_;
  unsigned busy_ = 0;
  bool stop_ = false;
};

}  // namespace

Outcome cegar_solve(const ReachabilityProblem& problem,
                    const EngineConfig& config) {
  EngineRun run(problem, config);
  return run.run();
}

}  // namespace stateq
