#include <doctest.h>

#include <random>

#include "gsp/types.hpp"
#include "support/oracles.hpp"

using namespace gsp;

namespace {

GspModel camera_model() {
  return GspModel(3, {Atom{{{1, 3, 2}, 1}, 0.22}, Atom{{{2, 3, 1}, 1}, 0.29},
                      Atom{{{3, 2, 1}, 1}, 0.21}, Atom{{{3, 2, 1}, 2}, 0.28}});
}

// The six-type instance whose table separates this model class from
// attention models (used again in the analysis tests).
GspModel separation_model() {
  return GspModel(4, {Atom{{{2, 3, 1, 4}, 1}, 0.41}, Atom{{{2, 4, 1, 3}, 1}, 0.09},
                      Atom{{{2, 1, 3, 4}, 2}, 0.10}, Atom{{{3, 1, 2, 4}, 2}, 0.01},
                      Atom{{{1, 3, 2, 4}, 2}, 0.09}, Atom{{{1, 2, 3, 4}, 0}, 0.30}});
}

}  // namespace

TEST_CASE("restrict_sequence keeps offered entries in original order") {
  CHECK(restrict_sequence({3, 2, 1}, Assortment({1, 2})) == std::vector<int>{2, 1});
  CHECK(restrict_sequence({1, 2, 3}, Assortment({1, 2, 3})) == std::vector<int>{1, 2, 3});
  CHECK(restrict_sequence({2, 4, 1, 3}, Assortment({1, 3})) == std::vector<int>{1, 3});
  CHECK(restrict_sequence({2, 4}, Assortment({1, 3})).empty());
}

TEST_CASE("choose picks the positioned entry of the restriction") {
  CHECK(choose({{3, 2, 1}, 2}, Assortment({1, 2})) == 1);
  CHECK(choose({{3, 2, 1}, 2}, Assortment({1, 2, 3})) == 2);
  CHECK(choose({{1, 2, 3}, 2}, Assortment({3})) == kNoChoice);   // restriction too short
  CHECK(choose({{1, 2, 3}, 0}, Assortment({1, 2, 3})) == kNoChoice);
}

TEST_CASE("choice_probability reproduces the camera shares") {
  const GspModel m = camera_model();
  CHECK(choice_probability(m, 2, Assortment({1, 2})) == doctest::Approx(0.50).epsilon(1e-12));
  CHECK(choice_probability(m, 2, Assortment({1, 2, 3})) == doctest::Approx(0.57).epsilon(1e-12));
  CHECK(choice_probability(m, 1, Assortment({1, 2})) == doctest::Approx(0.50).epsilon(1e-12));

  const GspModel abstainer(1, {Atom{{{1}, 0}, 1.0}});
  CHECK(choice_probability(abstainer, kNoChoice, Assortment({1})) == 1.0);

  CHECK_THROWS_AS(choice_probability(m, 3, Assortment({1, 2})), ValidationError);
}

TEST_CASE("choice_table matches pointwise evaluation and the axioms") {
  const GspModel m = camera_model();
  const ChoiceTable t = choice_table(m, {Assortment({1, 2}), Assortment({1, 2, 3})});
  REQUIRE(t.rows().size() == 2);
  CHECK(t.prob(1, Assortment({1, 2})) == doctest::Approx(0.50).epsilon(1e-12));
  CHECK(t.prob(2, Assortment({1, 2})) == doctest::Approx(0.50).epsilon(1e-12));
  CHECK(t.prob(1, Assortment({1, 2, 3})) == doctest::Approx(0.22).epsilon(1e-12));
  CHECK(t.prob(2, Assortment({1, 2, 3})) == doctest::Approx(0.57).epsilon(1e-12));
  CHECK(t.prob(3, Assortment({1, 2, 3})) == doctest::Approx(0.21).epsilon(1e-12));

  CHECK_THROWS_AS(choice_table(m, {}), ValidationError);
}

TEST_CASE("choice_table on the separation instance matches the derived totals") {
  // Totals re-derived with the independent oracle; the pairwise rows show the
  // strict increases that drive the precedence cycle.
  const GspModel m = separation_model();
  const std::vector<std::pair<int, std::vector<int>>> expected = {
      {1, {1, 2, 3, 4}}, {1, {1, 3, 4}}, {2, {2, 3, 4}}, {2, {2, 4}}, {3, {1, 3}}, {3, {3}}};
  const std::vector<double> values = {0.11, 0.01, 0.6, 0.5, 0.6, 0.5};
  for (std::size_t k = 0; k < expected.size(); ++k) {
    const auto& [x, ids] = expected[k];
    const double direct = choice_probability(m, x, Assortment(ids));
    CHECK(direct == doctest::Approx(values[k]).epsilon(1e-12));
    CHECK(direct ==
          doctest::Approx(testing::oracle_choice_prob(m.atoms(), x, ids)).epsilon(1e-15));
  }
}

TEST_CASE("enumerate_types order, counts, and filters") {
  const auto n1 = enumerate_types(1);
  REQUIRE(n1.size() == 2);
  CHECK(n1[0] == ConsumerType{{1}, 0});
  CHECK(n1[1] == ConsumerType{{1}, 1});

  const auto n3 = enumerate_types(3);
  CHECK(n3.size() == 48);  // 3*2 + 6*3 + 6*4

  int full_rational_rankings = 0;
  for (const auto& t : n3)
    if (t.sequence.size() == 3 && t.position == 1) ++full_rational_rankings;
  CHECK(full_rational_rankings == 6);

  for (int n = 1; n <= 5; ++n)
    CHECK(enumerate_types(n).size() == static_cast<std::size_t>(count_types(n)));

  // Deterministic canonical order, no duplicates.
  const auto n4 = enumerate_types(4);
  for (std::size_t i = 1; i < n4.size(); ++i) CHECK(type_less(n4[i - 1], n4[i]));

  CHECK(enumerate_types(4, 2).size() == static_cast<std::size_t>(count_types(4, 2)));
  CHECK_THROWS_AS(enumerate_types(0), ValidationError);
}

TEST_CASE("is_rational is a position predicate") {
  CHECK(is_rational({{1, 2, 3}, 1}));
  CHECK(is_rational({{1, 2, 3}, 0}));
  CHECK_FALSE(is_rational({{3, 2, 1}, 2}));
}

TEST_CASE("ranked_list_to_gsp truncates at the no-choice marker") {
  const GspModel single = ranked_list_to_gsp({{{1, 2, 0, 3}, 1.0}});
  REQUIRE(single.atoms().size() == 1);
  CHECK(single.atoms()[0].type == ConsumerType{{1, 2}, 1});
  CHECK(single.atoms()[0].weight == 1.0);

  const GspModel abstainer = ranked_list_to_gsp({{{0, 1, 2, 3}, 1.0}});
  REQUIRE(abstainer.atoms().size() == 1);
  CHECK(abstainer.atoms()[0].type == ConsumerType{{1, 2, 3}, 0});

  const GspModel uniform = ranked_list_to_gsp({{{1, 2, 0}, 0.5}, {{2, 1, 0}, 0.5}});
  CHECK(choice_probability(uniform, 1, Assortment({1, 2})) == doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS(ranked_list_to_gsp({{{1, 1, 0}, 1.0}}), ValidationError);
  CHECK_THROWS_AS(ranked_list_to_gsp({{{1, 2, 3}, 1.0}}), ValidationError);  // no 0 marker
}

TEST_CASE("model construction merges duplicates and polices weights") {
  const GspModel merged(2, {Atom{{{1, 2}, 1}, 0.25}, Atom{{{1, 2}, 1}, 0.25},
                            Atom{{{2, 1}, 1}, 0.5}, Atom{{{2}, 1}, 0.0}});
  CHECK(merged.atoms().size() == 2);  // zero-weight dropped, duplicates merged
  CHECK(merged.atoms()[1].weight == doctest::Approx(0.5).epsilon(1e-15));

  // Behaviorally equivalent but distinct types stay distinct.
  const GspModel distinct(2, {Atom{{{1}, 0}, 0.5}, Atom{{{2, 1}, 0}, 0.5}});
  CHECK(distinct.atoms().size() == 2);

  CHECK_NOTHROW(GspModel(2, {Atom{{{1}, 1}, 0.5000004}, Atom{{{2}, 1}, 0.5000004}}));
  CHECK_THROWS_AS(GspModel(2, {Atom{{{1}, 1}, 0.6}, Atom{{{2}, 1}, 0.5}}), ValidationError);
  CHECK_THROWS_AS(GspModel(2, {Atom{{{1}, 1}, -0.2}, Atom{{{2}, 1}, 1.2}}), ValidationError);
  CHECK_THROWS_AS(GspModel(2, {Atom{{{1, 1}, 1}, 1.0}}), ValidationError);
  CHECK_THROWS_AS(GspModel(2, {Atom{{{1}, 2}, 1.0}}), ValidationError);
}

TEST_CASE("axioms hold for random models") {
  std::mt19937 rng(20260810);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const GspModel m = testing::random_model(rng, n, 6);
    for (int rep = 0; rep < 8; ++rep) {
      const Assortment s(testing::random_subset(rng, n));
      double sum = 0.0;
      for (int x : s) {
        const double p = choice_probability(m, x, s);
        CHECK(p >= 0.0);
        sum += p;
      }
      CHECK(sum <= 1.0 + 1e-9);
      CHECK(sum + choice_probability(m, kNoChoice, s) == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("total demand never drops on supersets") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const GspModel m = testing::random_model(rng, n, 6);
    const std::vector<int> small = testing::random_subset(rng, n);
    std::vector<int> large = small;
    for (int id = 1; id <= n; ++id)
      if (std::find(large.begin(), large.end(), id) == large.end() && rng() % 2)
        large.push_back(id);
    double sum_small = 0.0, sum_large = 0.0;
    for (int x : small) sum_small += choice_probability(m, x, Assortment(small));
    for (int x : large) sum_large += choice_probability(m, x, Assortment(large));
    CHECK(sum_small <= sum_large + 1e-12);
  }
}

TEST_CASE("ranked-list embedding agrees with direct first-available evaluation") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    std::vector<RankedList> lists;
    const int count = 1 + static_cast<int>(rng() % 4);
    std::vector<double> raw;
    for (int i = 0; i < count; ++i) {
      std::vector<int> order(static_cast<std::size_t>(n) + 1);
      for (int v = 0; v <= n; ++v) order[static_cast<std::size_t>(v)] = v;
      std::shuffle(order.begin(), order.end(), rng);
      raw.push_back(std::uniform_real_distribution<double>(0.1, 1.0)(rng));
      lists.push_back({order, 0.0});
    }
    double sum = 0.0;
    for (double w : raw) sum += w;
    for (int i = 0; i < count; ++i) lists[static_cast<std::size_t>(i)].weight = raw[static_cast<std::size_t>(i)] / sum;

    const GspModel m = ranked_list_to_gsp(lists);
    for (const Assortment& s : all_assortments(n)) {
      for (int x = 0; x <= n; ++x) {
        if (x != 0 && !s.contains(x)) continue;
        double direct = 0.0;
        for (const RankedList& list : lists)
          if (testing::ranked_list_choose(list.order, s.members()) == x) direct += list.weight;
        CHECK(choice_probability(m, x, s) == doctest::Approx(direct).epsilon(1e-15));
      }
    }
  }
}

TEST_CASE("rational-only models are fully regular") {
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);
    GspModel any = testing::random_model(rng, n, 6);
    std::vector<Atom> rational_atoms;
    for (Atom a : any.atoms()) {
      a.type.position = std::min(a.type.position, 1);
      rational_atoms.push_back(a);
    }
    const GspModel m(n, std::move(rational_atoms));
    const auto assortments = all_assortments(n);
    for (const Assortment& s : assortments)
      for (const Assortment& sp : assortments) {
        if (!(s.size() < sp.size() && s.subset_of(sp))) continue;
        for (int x : s)
          CHECK(choice_probability(m, x, s) >= choice_probability(m, x, sp) - 1e-12);
      }
  }
}
