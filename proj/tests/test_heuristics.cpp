#include <doctest.h>

#include "support.h"

using namespace aosearch;
using testsupport::kTol;

namespace {

// Visits every OR and AND node of the context-minimal graph: each context
// instantiation of every variable, with other ancestors set to 0.
template <typename Fn>
void for_each_node(const BeliefNetwork& net, const Structure& s, Fn fn) {
  for (int v = 0; v < net.num_variables(); ++v) {
    std::vector<int> ctx = s.contexts.of(v);
    ctx.pop_back();
    Assignment a(static_cast<std::size_t>(net.num_variables()), kUnassigned);
    for (int anc : s.tree.ancestors(v)) a[anc] = 0;
    do {
      fn(a, NodeRef{v});
      for (int x = 0; x < net.domain_size(v); ++x) fn(a, NodeRef{v, x});
    } while (next_assignment(ctx, net.domain_sizes(), a));
  }
}

}  // namespace

TEST_CASE("bucket partitioning respects the i-bound") {
  std::vector<int> s1{0, 1, 2}, s2{1, 2}, s3{3}, s4{2, 3};
  std::vector<const std::vector<int>*> scopes{&s1, &s2, &s3, &s4};
  auto parts = partition_bucket(scopes, 3);
  std::size_t members = 0;
  for (const auto& part : parts) {
    std::set<int> vars;
    for (int k : part) {
      vars.insert(scopes[k]->begin(), scopes[k]->end());
      ++members;
    }
    CHECK(vars.size() <= 3);
  }
  CHECK(members == 4);
  CHECK(partition_bucket(scopes, 4).size() == 1);
}

TEST_CASE("single variable bound is the best prior entry") {
  std::vector<int> dom{3};
  BeliefNetwork net(dom, {Factor({0}, dom, {0.2, 0.5, 0.3})});
  Structure s = analyze(net, 0);
  StaticMiniBucket h(net, compile_smb(net, s.order, s.tree, 1));
  CHECK(h.root_bound(s.tree) == doctest::Approx(std::log(0.5)));
}

TEST_CASE("mini-bucket bound is exact once i exceeds the induced width") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    BeliefNetwork net = gen_random(10, 2 + seed % 2, 8, 2, seed);
    Structure s = analyze(net, seed);
    StaticMiniBucket h(net, compile_smb(net, s.order, s.tree, s.order.induced_width + 1));
    CHECK(h.root_bound(s.tree) + net.log_constant() ==
          doctest::Approx(enumerate_mpe(net).mpe_log_value).epsilon(kTol));
  }
}

TEST_CASE("static and dynamic bounds are admissible at every node") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    BeliefNetwork net = gen_random(9, 2, 7, 2, seed);
    Structure s = analyze(net, seed);
    for (int i : {1, 2, 3}) {
      StaticMiniBucket smb(net, compile_smb(net, s.order, s.tree, i));
      DynamicMiniBucket dmb(net, s.order, s.tree, i);
      int checked = 0;
      for_each_node(net, s, [&](const Assignment& a, NodeRef node) {
        double exact = testsupport::exact_subproblem(net, s.tree, a, node.var, node.value);
        CHECK(evaluate_h(smb, s.tree, a, node) >= exact - kTol);
        CHECK(evaluate_h(dmb, s.tree, a, node) >= exact - kTol);
        ++checked;
      });
      CHECK(checked > 0);
    }
  }
}

TEST_CASE("dynamic bound is exact at high i and never looser than static at i = 2") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    BeliefNetwork net = gen_random(10, 2, 8, 2, seed + 100);
    Structure s = analyze(net, seed);
    StaticMiniBucket smb(net, compile_smb(net, s.order, s.tree, 2));
    DynamicMiniBucket dmb2(net, s.order, s.tree, 2);
    DynamicMiniBucket exact(net, s.order, s.tree, s.order.induced_width + 1);
    for_each_node(net, s, [&](const Assignment& a, NodeRef node) {
      CHECK(evaluate_h(dmb2, s.tree, a, node) <= evaluate_h(smb, s.tree, a, node) + kTol);
      CHECK(evaluate_h(exact, s.tree, a, node) ==
            doctest::Approx(testsupport::exact_subproblem(net, s.tree, a, node.var, node.value))
                .epsilon(kTol));
    });
  }
}

TEST_CASE("static bound tightens as i grows on average") {
  double loose = 0, tight = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    BeliefNetwork net = gen_random(14, 2, 12, 2, seed);
    Structure s = analyze(net, seed);
    loose += StaticMiniBucket(net, compile_smb(net, s.order, s.tree, 2)).root_bound(s.tree);
    tight += StaticMiniBucket(net, compile_smb(net, s.order, s.tree, 5)).root_bound(s.tree);
  }
  CHECK(tight <= loose + kTol);
}

TEST_CASE("evaluate_h requires assigned ancestors") {
  BeliefNetwork net = testsupport::two_variable_net();
  Structure s = analyze(net, 0);
  StaticMiniBucket h(net, compile_smb(net, s.order, s.tree, 2));
  int leaf = s.tree.dfs_order().back();
  Assignment a(2, kUnassigned);
  CHECK_THROWS(evaluate_h(h, s.tree, a, NodeRef{leaf}));
}

TEST_CASE("memory budget is enforced during compilation") {
  BeliefNetwork net = gen_random(30, 3, 27, 3, 1);
  Structure s = analyze(net, 1);
  CHECK_THROWS_AS(compile_smb(net, s.order, s.tree, 8, 64), MemoryLimitError);
}
