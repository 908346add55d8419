#pragma once

#include <stdexcept>

namespace uncover {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A model/experiment description violates its invariants.
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

// The regular regime was requested for a graph with unequal degrees.
class NotRegular : public Error {
 public:
  using Error::Error;
};

// A nonpositive (or missing) scaling constant beta_n.
class BadScale : public Error {
 public:
  using Error::Error;
};

// Stub matching failed to produce a simple graph within the attempt cap.
class ConfigRejectionExceeded : public Error {
 public:
  using Error::Error;
};

// Conditioned-sum sampling failed to hit the target sum within the cap.
class RejectionBudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Input sizes disagree (e.g. time assignment vs. graph order).
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Evaluation outside [0,1].
class OutOfDomain : public Error {
 public:
  using Error::Error;
};

// A compensated martingale path was evaluated at t = 1, where the
// (1-t)-power compensation blows up.
class MartingaleAtOne : public Error {
 public:
  using Error::Error;
};

// A covariance matrix failed the positive-semidefiniteness check.
class NotPsd : public Error {
 public:
  using Error::Error;
};

// Empirical statistics and a covariance model use different grids.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

// Exact enumeration requested for an instance beyond the feasible size.
class TooLarge : public Error {
 public:
  using Error::Error;
};

}  // namespace uncover
