#pragma once

#include <stdexcept>
#include <string>

namespace treeprob {

// Enumeration would exceed the configured subtree cap.
class CapExceededError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// The observation has zero probability under every tree.
class ZeroEvidenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Overflow / NaN produced inside a tree fold.
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace treeprob
