/*
 * search.cpp
 */

#include "aosearch/search.h"

#include <algorithm>
#include <queue>
#include <tuple>

namespace aosearch {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct TimeLimitReached {};

}  // namespace

// ---------------------------------------------------------------------------
// SearchSpace

SearchSpace::SearchSpace(const BeliefNetwork& net, const PseudoTree& t, const ContextTable& contexts)
    : net_(net), t_(t), contexts_(contexts), bucket_factors_(assign_factors(net, t)) {
  const int n = net.num_variables();
  context_space_.assign(n, 1);
  dead_cache_.assign(n, 0);
  for (int v = 0; v < n; ++v) {
    std::uint64_t size = 1;
    for (int u : contexts.of(v)) {
      auto d = static_cast<std::uint64_t>(net.domain_size(u));
      size = size > UINT64_MAX / d ? UINT64_MAX : size * d;
    }
    context_space_[v] = size;
    dead_cache_[v] = static_cast<int>(contexts.of(v).size()) == t.depth(v) + 1;
  }
}

double SearchSpace::weight(int var, std::span<const int> assignment) const {
  double sum = 0.0;
  for (int f : bucket_factors_[var]) sum += net_.factors()[f].log_value(assignment);
  return sum;
}

std::optional<std::uint64_t> SearchSpace::context_key(int var, std::span<const int> assignment) const {
  if (context_space_[var] == UINT64_MAX) return std::nullopt;
  std::uint64_t key = 0;
  for (int u : contexts_.of(var))
    key = key * static_cast<std::uint64_t>(net_.domain_size(u)) + static_cast<std::uint64_t>(assignment[u]);
  return key;
}

double arc_weight(const SearchSpace& space, std::span<const int> path, int var, int value) {
  for (int a : space.tree().ancestors(var))
    if (path[a] == kUnassigned)
      throw std::invalid_argument("arc_weight: ancestor " + std::to_string(a) + " is unassigned");
  Assignment a(path.begin(), path.end());
  a[var] = value;
  return space.weight(var, a);
}

// ---------------------------------------------------------------------------
// AOBF

BestFirstSearch::BestFirstSearch(const SearchSpace& space, const Heuristic& h, AobfOptions options,
                                 SearchObserver* observer)
    : space_(space), h_(h), options_(options), observer_(observer) {
  const int n = space.network().num_variables();
  scratch_.assign(n, kUnassigned);
  cache_.resize(n);
  stats_.cache_entries_per_var.assign(n, 0);

  const int root = space.tree().root();
  OrNode s{root, -1, h_.or_bound(root, scratch_)};
  s.context.assign(space.contexts().of(root).size(), kUnassigned);
  s.solved = s.value == kLogZero;
  or_nodes_.push_back(std::move(s));
  bytes_ += sizeof(OrNode);
}

void BestFirstSearch::load_context(const std::vector<int>& ctx, int var) {
  const auto& vars = space_.contexts().of(var);
  for (std::size_t k = 0; k < vars.size(); ++k) scratch_[vars[k]] = ctx[k];
}

void BestFirstSearch::clear_context(int var) {
  for (int u : space_.contexts().of(var)) scratch_[u] = kUnassigned;
}

int BestFirstSearch::level(Tip tip) const {
  int var = tip.is_and ? and_nodes_[tip.id].var : or_nodes_[tip.id].var;
  return 2 * space_.tree().depth(var) + (tip.is_and ? 1 : 0);
}

std::vector<BestFirstSearch::Tip> BestFirstSearch::partial_solution_tips() const {
  std::vector<Tip> tips;
  std::vector<Tip> stack{{false, 0}};
  while (!stack.empty()) {
    Tip cur = stack.back();
    stack.pop_back();
    if (cur.is_and) {
      const AndNode& m = and_nodes_[cur.id];
      if (m.solved) continue;
      if (!m.expanded) {
        tips.push_back(cur);
        continue;
      }
      for (auto it = m.children.rbegin(); it != m.children.rend(); ++it) stack.push_back({false, *it});
    } else {
      const OrNode& o = or_nodes_[cur.id];
      if (o.solved) continue;
      if (!o.expanded) {
        tips.push_back(cur);
        continue;
      }
      stack.push_back({true, o.children[o.marked]});
    }
  }
  return tips;
}

BestFirstSearch::Tip BestFirstSearch::select_tip(std::span<const Tip> tips) const {
  const PseudoTree& t = space_.tree();
  auto var_of = [&](Tip tip) { return tip.is_and ? and_nodes_[tip.id].var : or_nodes_[tip.id].var; };
  auto key = [&](Tip tip) {
    int depth_key = options_.tip_policy == TipPolicy::Deepest ? -level(tip) : 0;
    return std::make_pair(depth_key, t.preorder_index(var_of(tip)));
  };
  return *std::min_element(tips.begin(), tips.end(),
                           [&](Tip a, Tip b) { return key(a) < key(b); });
}

void BestFirstSearch::expand(Tip tip) {
  const PseudoTree& t = space_.tree();
  const BeliefNetwork& net = space_.network();
  if (tip.is_and) {
    const int var = and_nodes_[tip.id].var;
    load_context(and_nodes_[tip.id].context, var);
    for (int child : t.children(var)) {
      OrNode o{child, tip.id, h_.or_bound(child, scratch_)};
      const auto& ctx = space_.contexts().of(child);
      o.context.reserve(ctx.size());
      for (int u : ctx) o.context.push_back(u == child ? kUnassigned : scratch_[u]);
      o.solved = o.value == kLogZero;
      bytes_ += sizeof(OrNode) + ctx.size() * sizeof(int);
      and_nodes_[tip.id].children.push_back(static_cast<int>(or_nodes_.size()));
      or_nodes_.push_back(std::move(o));
    }
    clear_context(var);
    and_nodes_[tip.id].expanded = true;
    ++stats_.and_expanded;
  } else {
    const int var = or_nodes_[tip.id].var;
    load_context(or_nodes_[tip.id].context, var);
    const bool terminal = t.children(var).empty();
    const auto& ctx = space_.contexts().of(var);
    for (int x = 0; x < net.domain_size(var); ++x) {
      scratch_[var] = x;
      double w = space_.weight(var, scratch_);
      auto key = space_.context_key(var, scratch_);
      int id = -1;
      if (key) {
        auto it = cache_[var].find(*key);
        if (it != cache_[var].end()) id = it->second;
      }
      if (id >= 0) {
        ++stats_.cache_hits;
      } else {
        AndNode m{var, x, terminal ? 0.0 : h_.and_bound(var, scratch_)};
        m.solved = terminal || m.value == kLogZero;
        m.expanded = terminal;
        m.context.reserve(ctx.size());
        for (int u : ctx) m.context.push_back(scratch_[u]);
        id = static_cast<int>(and_nodes_.size());
        and_nodes_.push_back(std::move(m));
        bytes_ += sizeof(AndNode) + ctx.size() * sizeof(int);
        if (key) {
          cache_[var].emplace(*key, id);
          ++stats_.cache_entries;
          ++stats_.cache_entries_per_var[var];
          bytes_ += 4 * sizeof(void*);
        }
      }
      and_nodes_[id].parents.push_back(tip.id);
      or_nodes_[tip.id].children.push_back(id);
      or_nodes_[tip.id].weights.push_back(w);
      bytes_ += sizeof(int) * 2 + sizeof(double);
    }
    clear_context(var);
    or_nodes_[tip.id].expanded = true;
    ++stats_.or_expanded;
  }
  ++stats_.nodes_expanded;
  if (bytes_ > options_.limits.memory_limit_bytes)
    throw MemoryLimitError("explicated search graph exceeds the memory limit");
}

void BestFirstSearch::revise(Tip start) {
  // A node of maximal level has no descendants left in S: descendants always
  // sit strictly deeper in the pseudo-tree, or are the AND children of an OR
  // node of the same variable.
  using Entry = std::tuple<int, bool, int>;  // level, is_and, id
  std::priority_queue<Entry> queue;
  std::vector<char> in_or(or_nodes_.size(), 0), in_and(and_nodes_.size(), 0);
  auto push = [&](Tip tip) {
    auto& flag = tip.is_and ? in_and[tip.id] : in_or[tip.id];
    if (flag) return;
    flag = 1;
    queue.emplace(level(tip), tip.is_and, tip.id);
  };
  push(start);

  while (!queue.empty()) {
    auto [lvl, is_and, id] = queue.top();
    queue.pop();
    (is_and ? in_and[id] : in_or[id]) = 0;

    if (is_and) {
      AndNode& m = and_nodes_[id];
      const double before = m.value;
      const bool was_solved = m.solved;
      double sum = 0.0;
      bool all_solved = true;
      for (int c : m.children) {
        sum += or_nodes_[c].value;
        all_solved = all_solved && or_nodes_[c].solved;
      }
      m.value = sum;
      m.solved = all_solved || sum == kLogZero;
      if (observer_ && before != m.value) observer_->on_revise(true, m.var, before, m.value);
      if (m.value == before && m.solved == was_solved) continue;
      for (int p : m.parents) {
        const OrNode& o = or_nodes_[p];
        // an increase (inconsistent heuristic) can overtake the marked arc
        if (o.expanded && (o.children[o.marked] == id || m.value > before)) push({false, p});
      }
    } else {
      OrNode& o = or_nodes_[id];
      const double before = o.value;
      const bool was_solved = o.solved;
      double best = kLogZero;
      int marked = 0;
      for (std::size_t j = 0; j < o.children.size(); ++j) {
        double v = o.weights[j] + and_nodes_[o.children[j]].value;
        if (v > best) {
          best = v;
          marked = static_cast<int>(j);
        }
      }
      o.value = best;
      o.marked = marked;
      o.solved = and_nodes_[o.children[marked]].solved || best == kLogZero;
      if (observer_ && before != o.value) observer_->on_revise(false, o.var, before, o.value);
      if (o.value == before && o.solved == was_solved) continue;
      if (o.parent >= 0) push({true, o.parent});
    }
  }
}

bool BestFirstSearch::step() {
  if (solved()) return false;
  std::vector<Tip> tips = partial_solution_tips();
  if (observer_) {
    // evaluation of the selected partial solution tree
    double f = 0.0;
    std::vector<Tip> stack{{false, 0}};
    while (!stack.empty()) {
      Tip cur = stack.back();
      stack.pop_back();
      if (cur.is_and) {
        const AndNode& m = and_nodes_[cur.id];
        if (m.solved || !m.expanded) {
          f += m.value;
          continue;
        }
        for (int c : m.children) stack.push_back({false, c});
      } else {
        const OrNode& o = or_nodes_[cur.id];
        if (o.solved || !o.expanded) {
          f += o.value;
          continue;
        }
        f += o.weights[o.marked];
        stack.push_back({true, o.children[o.marked]});
      }
    }
    observer_->on_select(f);
  }
  Tip tip = select_tip(tips);
  expand(tip);
  revise(tip);
  return !solved();
}

Assignment BestFirstSearch::solution(double* weight_sum) const {
  Assignment out(static_cast<std::size_t>(space_.network().num_variables()), kUnassigned);
  double weight = 0.0;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const OrNode& o = or_nodes_[stack.back()];
    stack.pop_back();
    if (!o.expanded || o.marked < 0) continue;
    const AndNode& m = and_nodes_[o.children[o.marked]];
    out[m.var] = m.val;
    weight += o.weights[o.marked];
    for (int c : m.children) stack.push_back(c);
  }
  bool complete = true;
  for (int& v : out)
    if (v == kUnassigned) {
      v = 0;
      complete = false;
    }
  if (weight_sum) *weight_sum = complete ? weight : kLogZero;
  return out;
}

SolveResult aobf(const SearchSpace& space, const Heuristic& h, const AobfOptions& options,
                 SearchObserver* observer) {
  const auto start = Clock::now();
  const double log_constant = space.network().log_constant();
  SolveResult result;
  std::unique_ptr<BestFirstSearch> search;
  try {
    if (options.limits.time_limit_seconds <= 0) throw TimeLimitReached{};
    search = std::make_unique<BestFirstSearch>(space, h, options, observer);
    while (!search->solved()) {
      if (elapsed_since(start) >= options.limits.time_limit_seconds) throw TimeLimitReached{};
      search->step();
    }
    result.status = SearchStatus::Solved;
  } catch (const TimeLimitReached&) {
    result.status = SearchStatus::Timeout;
  } catch (const MemoryLimitError&) {
    result.status = SearchStatus::Memout;
  } catch (const std::bad_alloc&) {
    result.status = SearchStatus::Memout;
  }
  if (search) {
    result.stats = search->stats();
    result.mpe_log_value = search->root_value() + log_constant;
    if (result.status == SearchStatus::Solved) {
      double weight = 0.0;
      result.assignment = search->solution(&weight);
      result.solution_weight = weight + log_constant;
    }
  }
  result.stats.seconds = elapsed_since(start);
  return result;
}

// ---------------------------------------------------------------------------
// AOBB

namespace {

struct SolutionNode;
using SolutionPtr = std::shared_ptr<const SolutionNode>;

// Optimal solution subtree below an AND node; shared between cache entries.
struct SolutionNode {
  int var;
  int val;
  double weight;
  std::vector<SolutionPtr> children;
};

class BranchAndBound {
 public:
  BranchAndBound(const SearchSpace& space, const Heuristic& h, const AobbOptions& options)
      : space_(space), h_(h), options_(options), start_(Clock::now()) {
    const int n = space.network().num_variables();
    a_.assign(n, kUnassigned);
    cache_.resize(n);
    stats_.cache_entries_per_var.assign(n, 0);
  }

  struct Outcome {
    double value;  // exact when `exact`, otherwise only known to be <= the request
    bool exact;
    SolutionPtr solution;
  };

  Outcome run() { return solve_or(space_.tree().root(), kLogZero); }

  const SearchStats& stats() const { return stats_; }
  double root_best() const { return root_best_; }

 private:
  struct CacheEntry {
    double value;
    SolutionPtr solution;
  };

  struct Child {
    int val;
    double weight;
    double bound;  // weight + h, or weight + exact value when known
    bool known;
    SolutionPtr solution;
    std::optional<std::uint64_t> key;
  };

  bool cacheable(int var) const {
    return options_.caching && !(options_.dead_cache_elimination && space_.dead_cache(var));
  }

  void tick() {
    if ((++stats_.nodes_expanded & 1023) == 0 &&
        elapsed_since(start_) >= options_.limits.time_limit_seconds)
      throw TimeLimitReached{};
  }

  Outcome solve_or(int var, double need) {
    ++stats_.or_expanded;
    tick();
    const bool terminal = space_.tree().children(var).empty();
    const int d = space_.network().domain_size(var);
    std::vector<Child> children;
    children.reserve(d);
    for (int x = 0; x < d; ++x) {
      a_[var] = x;
      Child c{x, space_.weight(var, a_), kLogZero, false, nullptr, std::nullopt};
      if (c.weight == kLogZero) {
        c.known = true;
      } else if (terminal) {
        c.bound = c.weight;
        c.known = true;
        c.solution = std::make_shared<SolutionNode>(SolutionNode{var, x, c.weight, {}});
      } else {
        if (cacheable(var)) c.key = space_.context_key(var, a_);
        if (c.key) {
          auto it = cache_[var].find(*c.key);
          if (it != cache_[var].end()) {
            ++stats_.cache_hits;
            c.known = true;
            c.bound = c.weight + it->second.value;
            c.solution = it->second.solution;
          }
        }
        if (!c.known) c.bound = c.weight + h_.and_bound(var, a_);
      }
      children.push_back(std::move(c));
    }
    std::stable_sort(children.begin(), children.end(),
                     [](const Child& l, const Child& r) { return l.bound > r.bound; });

    double best = kLogZero;
    SolutionPtr best_solution;
    for (Child& c : children) {
      const double threshold = std::max(best, need);
      if (c.bound <= threshold) break;  // sorted: the rest cannot do better
      double value;
      SolutionPtr solution;
      if (c.known) {
        value = c.bound;
        solution = c.solution;
      } else {
        a_[var] = c.val;
        Outcome o = solve_and(var, c.weight, c.bound - c.weight, threshold - c.weight, c.key);
        if (!o.exact) continue;
        value = c.weight + o.value;
        solution = std::move(o.solution);
      }
      if (value > best) {
        best = value;
        best_solution = std::move(solution);
      }
      if (var == space_.tree().root()) root_best_ = std::max(root_best_, best);
    }
    a_[var] = kUnassigned;
    const bool exact = best > need || need == kLogZero;
    return {exact ? best : need, exact, exact ? best_solution : nullptr};
  }

  Outcome solve_and(int var, double weight, double h_value, double need,
                    std::optional<std::uint64_t> key) {
    ++stats_.and_expanded;
    tick();
    (void)h_value;
    const auto& kids = space_.tree().children(var);
    std::vector<double> hs(kids.size());
    for (std::size_t k = 0; k < kids.size(); ++k) hs[k] = h_.or_bound(kids[k], a_);
    std::vector<double> rest(kids.size() + 1, 0.0);  // suffix sums of child bounds
    for (std::size_t k = kids.size(); k-- > 0;) rest[k] = rest[k + 1] + hs[k];

    auto node = std::make_shared<SolutionNode>(SolutionNode{var, a_[var], weight, {}});
    double sum = 0.0;
    if (rest[0] == kLogZero) {
      sum = kLogZero;
    } else {
      if (need != kLogZero && rest[0] <= need) return {need, false, nullptr};
      for (std::size_t k = 0; k < kids.size(); ++k) {
        Outcome o = solve_or(kids[k], need - sum - rest[k + 1]);
        if (!o.exact) return {need, false, nullptr};
        sum += o.value;
        if (o.solution) node->children.push_back(std::move(o.solution));
        if (sum == kLogZero) break;
        if (need != kLogZero && sum + rest[k + 1] <= need && k + 1 < kids.size())
          return {need, false, nullptr};
      }
    }
    if (key) store(var, *key, sum, node);
    return {sum, true, node};
  }

  void store(int var, std::uint64_t key, double value, SolutionPtr solution) {
    cache_[var].emplace(key, CacheEntry{value, std::move(solution)});
    ++stats_.cache_entries;
    ++stats_.cache_entries_per_var[var];
    bytes_ += sizeof(CacheEntry) + sizeof(SolutionNode) + 4 * sizeof(void*);
    if (bytes_ > options_.limits.memory_limit_bytes)
      throw MemoryLimitError("AOBB cache exceeds the memory limit");
  }

  const SearchSpace& space_;
  const Heuristic& h_;
  AobbOptions options_;
  Clock::time_point start_;
  Assignment a_;
  std::vector<std::unordered_map<std::uint64_t, CacheEntry>> cache_;
  SearchStats stats_;
  std::size_t bytes_ = 0;
  double root_best_ = kLogZero;
};

void collect(const SolutionNode& node, Assignment& out, double& weight) {
  out[node.var] = node.val;
  weight += node.weight;
  for (const auto& c : node.children) collect(*c, out, weight);
}

}  // namespace

SolveResult aobb(const SearchSpace& space, const Heuristic& h, const AobbOptions& options) {
  const auto start = Clock::now();
  const double log_constant = space.network().log_constant();
  SolveResult result;
  BranchAndBound search(space, h, options);
  try {
    if (options.limits.time_limit_seconds <= 0) throw TimeLimitReached{};
    auto outcome = search.run();
    result.status = SearchStatus::Solved;
    result.mpe_log_value = outcome.value + log_constant;
    result.assignment.assign(static_cast<std::size_t>(space.network().num_variables()), kUnassigned);
    double weight = 0.0;
    if (outcome.solution) collect(*outcome.solution, result.assignment, weight);
    bool complete = true;
    for (int& v : result.assignment)
      if (v == kUnassigned) {
        v = 0;
        complete = false;
      }
    result.solution_weight = complete ? weight + log_constant : kLogZero;
  } catch (const TimeLimitReached&) {
    result.status = SearchStatus::Timeout;
    result.mpe_log_value = search.root_best() + log_constant;
  } catch (const MemoryLimitError&) {
    result.status = SearchStatus::Memout;
    result.mpe_log_value = search.root_best() + log_constant;
  } catch (const std::bad_alloc&) {
    result.status = SearchStatus::Memout;
    result.mpe_log_value = search.root_best() + log_constant;
  }
  result.stats = search.stats();
  result.stats.nodes_expanded = result.stats.or_expanded + result.stats.and_expanded;
  result.stats.seconds = elapsed_since(start);
  return result;
}

}  // namespace aosearch
