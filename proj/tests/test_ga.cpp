#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "qevo/ga.hpp"

using namespace qevo;

namespace {

ga::Population<int> make_population(std::vector<double> fitnesses) {
  ga::Population<int> pop;
  for (std::size_t i = 0; i < fitnesses.size(); ++i)
    pop.members.push_back({int(i), int(i)});
  pop.fitnesses = std::move(fitnesses);
  pop.generation = 1;
  return pop;
}

// flip rule for binary genes; always changes the gene
const ga::GeneResampler<int> flip_gene = [](const std::vector<int>& chromosome, std::size_t j,
                                            ga::Rng&) { return 1 - chromosome[j]; };

ga::GaProblem<int> one_max_problem(std::size_t length) {
  ga::GaProblem<int> problem;
  problem.init = [length](ga::Rng& rng) {
    std::uniform_int_distribution<int> bit(0, 1);
    std::vector<int> genes(length);
    for (int& g : genes) g = bit(rng);
    return genes;
  };
  problem.fitness = [](const std::vector<int>& genes) {
    double ones = 0.0;
    for (int g : genes) ones += g;
    return ones;
  };
  problem.resample_gene = [](const std::vector<int>&, std::size_t, ga::Rng& rng) {
    std::uniform_int_distribution<int> bit(0, 1);
    return bit(rng);
  };
  return problem;
}

}  // namespace

TEST_CASE("config validation") {
  ga::GaConfig config;
  config.population_size = 44;
  config.max_generations = 10;
  CHECK_NOTHROW(config.validate());

  auto bad = config;
  bad.population_size = 1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = config;
  bad.crossover_rate = 1.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = config;
  bad.mutation_rate = -0.1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = config;
  bad.max_generations = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = config;
  bad.elite_count = 44;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("roulette spin boundaries") {
  const std::vector<double> fitnesses = {3.0, 1.0};
  CHECK(ga::pick_roulette(fitnesses, 0.0) == 0);
  CHECK(ga::pick_roulette(fitnesses, 2.999999) == 0);
  CHECK(ga::pick_roulette(fitnesses, 3.0) == 1);
  CHECK(ga::pick_roulette(fitnesses, 3.999999) == 1);
}

TEST_CASE("roulette selection frequencies") {
  ga::Rng rng(7);
  constexpr int draws = 10000;

  SUBCASE("fitnesses 3:1 select member 0 about three quarters of the time") {
    auto pop = make_population({3.0, 1.0});
    int first = 0;
    for (int i = 0; i < draws; ++i) {
      const auto selected = ga::roulette_select(pop, rng);
      for (const auto& member : selected.members)
        if (member[0] == 0) ++first;
    }
    const double expected = 0.75 * draws * 2;
    const double sigma = std::sqrt(draws * 2 * 0.75 * 0.25);
    CHECK(std::abs(first - expected) <= 3.0 * sigma);
  }

  SUBCASE("equal fitnesses select uniformly") {
    auto pop = make_population({1.0, 1.0, 1.0, 1.0});
    std::array<int, 4> counts{};
    for (int i = 0; i < draws; ++i) {
      const auto selected = ga::roulette_select(pop, rng);
      counts[std::size_t(selected.members[0][0])]++;
    }
    const double sigma = std::sqrt(draws * 0.25 * 0.75);
    for (int c : counts) CHECK(std::abs(c - draws / 4.0) <= 3.0 * sigma);
  }
}

TEST_CASE("roulette selection copies existing chromosomes and keeps the size") {
  auto pop = make_population({0.5, 1.5, 2.5, 0.1, 3.0});
  ga::Rng rng(11);
  const auto selected = ga::roulette_select(pop, rng);
  CHECK(selected.members.size() == pop.members.size());
  CHECK(selected.generation == pop.generation);
  std::set<std::vector<int>> originals(pop.members.begin(), pop.members.end());
  for (std::size_t i = 0; i < selected.members.size(); ++i) {
    CHECK(originals.contains(selected.members[i]));
    // carried fitness stays parallel to the copied chromosome
    CHECK(selected.fitnesses[i] == pop.fitnesses[std::size_t(selected.members[i][0])]);
  }
}

TEST_CASE("all-zero fitnesses fall back to uniform selection and are flagged") {
  auto pop = make_population({0.0, 0.0, 0.0, 0.0});
  ga::Rng rng(3);
  bool flagged = false;
  const auto selected = ga::roulette_select(pop, rng, &flagged);
  CHECK(flagged);
  CHECK(selected.members.size() == 4);
}

TEST_CASE("tournament winner rules") {
  const std::vector<double> f = {0.2, 0.5, 0.9, 0.5, 0.5, 0.1};
  CHECK(ga::tournament_winner(f, 2, 5) == 2);  // 0.9 beats 0.1
  CHECK(ga::tournament_winner(f, 3, 3) == 3);  // self-pair
  CHECK(ga::tournament_winner(f, 1, 4) == 1);  // tie goes to the lower index
  CHECK(ga::tournament_winner(f, 4, 1) == 1);
}

TEST_CASE("tournament pair returns population members") {
  auto pop = make_population({0.1, 0.9, 0.4, 0.8});
  ga::Rng rng(5);
  std::set<std::vector<int>> originals(pop.members.begin(), pop.members.end());
  for (int i = 0; i < 50; ++i) {
    const auto [a, b] = ga::tournament_pair(pop, rng);
    CHECK(originals.contains(a));
    CHECK(originals.contains(b));
  }
}

TEST_CASE("one-point crossover") {
  const std::vector<int> a = {1, 1, 1, 1, 1};
  const std::vector<int> b = {0, 0, 0, 0, 0};

  SUBCASE("cut at the second position") {
    const auto [c1, c2] = ga::crossover_at(a, b, 2);
    CHECK(c1 == std::vector<int>{1, 1, 0, 0, 0});
    CHECK(c2 == std::vector<int>{0, 0, 1, 1, 1});
  }

  SUBCASE("swapping parents swaps the children") {
    for (std::size_t k = 1; k < a.size(); ++k) {
      const auto [c1, c2] = ga::crossover_at(a, b, k);
      const auto [d1, d2] = ga::crossover_at(b, a, k);
      CHECK(c1 == d2);
      CHECK(c2 == d1);
    }
  }

  SUBCASE("identical parents reproduce themselves") {
    ga::Rng rng(1);
    const auto [c1, c2] = ga::one_point_crossover(a, a, rng);
    CHECK(c1 == a);
    CHECK(c2 == a);
  }

  SUBCASE("length mismatch") {
    const std::vector<int> shorter = {1, 0};
    ga::Rng rng(1);
    CHECK_THROWS_AS(ga::one_point_crossover(a, shorter, rng), std::invalid_argument);
  }

  SUBCASE("random cut yields prefix/suffix structure") {
    ga::Rng rng(9);
    for (int i = 0; i < 20; ++i) {
      const auto [c1, c2] = ga::one_point_crossover(a, b, rng);
      // child1 = ones then zeros, child2 = zeros then ones, same cut
      const auto cut1 = std::size_t(std::count(c1.begin(), c1.end(), 1));
      CHECK(cut1 >= 1);
      CHECK(cut1 <= a.size() - 1);
      for (std::size_t j = 0; j < a.size(); ++j) {
        CHECK(c1[j] == (j < cut1 ? 1 : 0));
        CHECK(c2[j] == (j < cut1 ? 0 : 1));
      }
    }
  }
}

TEST_CASE("mutation") {
  const std::vector<int> genes = {1, 0, 0, 1, 1};

  SUBCASE("zero chromosome rate never changes anything") {
    ga::Rng rng(123);
    for (int i = 0; i < 100; ++i)
      CHECK(ga::mutate(genes, flip_gene, 0.0, 1.0, rng) == genes);
  }

  SUBCASE("full chromosome and site rates flip every gene") {
    ga::Rng rng(123);
    CHECK(ga::mutate(genes, flip_gene, 1.0, 1.0, rng) == std::vector<int>{0, 1, 1, 0, 0});
  }

  SUBCASE("expected mutated gene count is p_s * length") {
    constexpr std::size_t length = 100;
    constexpr int trials = 10000;
    constexpr double p_s = 0.1;
    const std::vector<int> zeros(length, 0);
    ga::Rng rng(2024);
    long long flipped = 0;
    for (int t = 0; t < trials; ++t) {
      const auto mutant = ga::mutate(zeros, flip_gene, 1.0, p_s, rng);
      flipped += std::count(mutant.begin(), mutant.end(), 1);
    }
    const double expected = double(trials) * length * p_s;
    const double sigma = std::sqrt(double(trials) * length * p_s * (1.0 - p_s));
    CHECK(std::abs(double(flipped) - expected) <= 3.0 * sigma);
  }
}

TEST_CASE("without recombination or mutation a generation only resamples copies") {
  auto pop = make_population({0.4, 1.1, 0.9, 2.0, 0.7, 1.6});
  std::set<std::vector<int>> originals(pop.members.begin(), pop.members.end());
  ga::Rng rng(17);

  const auto selected = ga::roulette_select(pop, rng);
  std::vector<std::vector<int>> next;
  for (std::size_t p = 0; p + 1 < selected.members.size(); p += 2) {
    auto parents = ga::tournament_pair(selected, rng);
    // crossover gate never fires at p_r = 0, parents pass through
    next.push_back(std::move(parents.first));
    next.push_back(std::move(parents.second));
  }
  for (auto& member : next) {
    member = ga::mutate(std::move(member), flip_gene, 0.0, 0.5, rng);
    CHECK(originals.contains(member));
  }
  CHECK(next.size() == pop.members.size());
}

TEST_CASE("run terminates on the threshold at generation 1 for a constant evaluator") {
  ga::GaProblem<int> problem;
  problem.init = [](ga::Rng&) { return std::vector<int>{0, 0}; };
  problem.fitness = [](const std::vector<int>&) { return 1.0; };
  problem.resample_gene = flip_gene;

  ga::GaConfig config;
  config.population_size = 4;
  config.max_generations = 100;
  config.fitness_threshold = 0.5;
  const auto trace = ga::run(problem, config);
  CHECK(trace.records.size() == 1);
  CHECK(trace.records.front().generation == 1);
  CHECK(trace.termination == ga::Termination::threshold_reached);
}

TEST_CASE("run without a threshold stops exactly at max_generations") {
  auto problem = one_max_problem(6);
  ga::GaConfig config;
  config.population_size = 6;
  config.crossover_rate = 0.5;
  config.mutation_rate = 0.3;
  config.site_mutation_rate = 0.2;
  config.max_generations = 17;
  config.rng_seed = 4;
  const auto trace = ga::run(problem, config);
  CHECK(trace.records.size() == 17);
  CHECK(trace.records.back().generation == 17);
  CHECK(trace.termination == ga::Termination::max_generations);
}

TEST_CASE("every record satisfies best >= mean") {
  auto problem = one_max_problem(12);
  ga::GaConfig config;
  config.population_size = 10;
  config.crossover_rate = 0.6;
  config.mutation_rate = 0.4;
  config.site_mutation_rate = 0.2;
  config.max_generations = 40;
  config.rng_seed = 77;
  const auto trace = ga::run(problem, config);
  for (const auto& record : trace.records) {
    CHECK(record.best_fitness >= record.mean_fitness);
    CHECK(record.best_fitness ==
          double(std::count(record.best.begin(), record.best.end(), 1)));
  }
}

TEST_CASE("elitism keeps the best fitness non-decreasing") {
  auto problem = one_max_problem(20);
  ga::GaConfig config;
  config.population_size = 12;
  config.crossover_rate = 0.65;
  config.mutation_rate = 0.5;
  config.site_mutation_rate = 0.3;
  config.max_generations = 60;
  config.rng_seed = 31;
  config.elite_count = 1;
  const auto trace = ga::run(problem, config);
  REQUIRE(trace.elitism);
  for (std::size_t i = 1; i < trace.records.size(); ++i)
    CHECK(trace.records[i].best_fitness >= trace.records[i - 1].best_fitness);
}

TEST_CASE("identical config and problem reproduce the trace bit for bit") {
  auto problem = one_max_problem(15);
  ga::GaConfig config;
  config.population_size = 9;
  config.crossover_rate = 0.65;
  config.mutation_rate = 0.2;
  config.site_mutation_rate = 0.1;
  config.max_generations = 30;
  config.rng_seed = 99;

  const auto first = ga::run(problem, config);
  const auto second = ga::run(problem, config);
  REQUIRE(first.records.size() == second.records.size());
  for (std::size_t i = 0; i < first.records.size(); ++i) {
    CHECK(first.records[i].generation == second.records[i].generation);
    CHECK(first.records[i].best_fitness == second.records[i].best_fitness);
    CHECK(first.records[i].mean_fitness == second.records[i].mean_fitness);
    CHECK(first.records[i].best == second.records[i].best);
  }
  CHECK(first.termination == second.termination);
}

TEST_CASE("an all-zero evaluator runs on uniform selection and flags every generation") {
  ga::GaProblem<int> problem;
  problem.init = [](ga::Rng& rng) {
    std::uniform_int_distribution<int> bit(0, 1);
    const int a = bit(rng);
    const int b = bit(rng);
    return std::vector<int>{a, b};
  };
  problem.fitness = [](const std::vector<int>&) { return 0.0; };
  problem.resample_gene = flip_gene;

  ga::GaConfig config;
  config.population_size = 4;
  config.max_generations = 5;
  config.rng_seed = 1;
  const auto trace = ga::run(problem, config);
  CHECK(trace.records.size() == 5);
  CHECK(trace.uniform_selection_events == 4);  // one selection per evolved generation
}

TEST_CASE("evaluator failures carry generation context") {
  ga::GaProblem<int> problem;
  problem.init = [](ga::Rng&) { return std::vector<int>{1, 1}; };
  problem.fitness = [](const std::vector<int>&) -> double {
    throw std::runtime_error("boom");
  };
  problem.resample_gene = flip_gene;
  ga::GaConfig config;
  config.population_size = 2;
  CHECK_THROWS_WITH_AS(ga::run(problem, config), "generation 1, member 0: boom",
                       std::runtime_error);
}

TEST_CASE("one-max benchmark reaches the known optimum on at least 9 of 10 seeds") {
  constexpr std::size_t length = 20;
  auto problem = one_max_problem(length);
  int solved = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    ga::GaConfig config;
    config.population_size = 44;
    config.crossover_rate = 0.65;
    config.mutation_rate = 0.2;
    config.site_mutation_rate = 0.1;
    config.max_generations = 3200;
    config.fitness_threshold = double(length);  // brute-force optimum: all ones
    config.rng_seed = seed;
    const auto trace = ga::run(problem, config);
    if (trace.termination == ga::Termination::threshold_reached) ++solved;
  }
  CHECK(solved >= 9);
}
