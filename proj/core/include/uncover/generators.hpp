#pragma once

#include <string>
#include <vector>

#include "uncover/graph.hpp"
#include "uncover/rng.hpp"

namespace uncover {

enum class GraphModel {
  Path,
  Cycle,
  CompleteBipartite,  // balanced, n even
  LabelledTree,       // uniform over labelled trees (Pruefer sequence)
  CondGwPoisson,      // branching tree conditioned on size, Poisson(1) offspring
  CondGwBinomial,     // Binomial(2, 1/2) offspring
  CondGwGeometric,    // Geometric(1/2) offspring
  BinarySearchTree,   // tree of a BST built from a uniform permutation
  RecursiveTree,      // vertex j attaches to a uniform vertex below it
  Gnm,                // uniform m-subset of all vertex pairs
  Gnp,                // independent edges with probability p
  Configuration,      // stub matching with the given degrees, rejected until simple
};

struct ModelSpec {
  GraphModel kind = GraphModel::Path;
  int n = 0;
  long long m = 0;            // Gnm
  double p = 0;               // Gnp
  std::vector<int> degrees;   // Configuration
  int matching_attempt_cap = 10000;    // Configuration rejection cap
  long long sum_trial_cap = 1000000;   // conditioned-sum rejection cap
};

// Models that ignore the random stream entirely.
bool is_deterministic(GraphModel kind);

std::string to_string(GraphModel kind);
GraphModel graph_model_from_string(const std::string& name);

// Draws a simple graph with exactly spec.n vertices from the model.
// Identical (spec, stream state) pairs produce identical graphs.
Graph generate(const ModelSpec& spec, RngStream& rng);

enum class Offspring { PoissonOne, BinomialTwoHalf, GeometricHalf };

// Child counts xi_1..xi_n drawn i.i.d. from the (critical, mean-1) offspring
// law conditioned on summing to n-1 (rejection on the sum event), then
// rotated by the cycle lemma so the prefix walk sum_{i<=j}(xi_i - 1) stays
// nonnegative for every proper prefix. The result encodes a tree in
// depth-first order.
std::vector<int> gw_degree_sequence(Offspring law, int n, RngStream& rng,
                                    long long trial_cap = 1000000);

}  // namespace uncover
