#pragma once

#include <memory>
#include <string>
#include <vector>

#include "surfkernel/group.hpp"
#include "surfkernel/orbifold.hpp"
#include "surfkernel/reducer.hpp"
#include "surfkernel/schreier.hpp"

namespace surfkernel {

/// Schreier system, kernel presentation and reduction for one input. The
/// system lives on the heap so references into it stay valid when the
/// analysis is moved.
struct Analysis {
  std::unique_ptr<SchreierSystem> system;
  KernelPresentation presentation;
  ReducedPresentation reduced;
  int genus = 0;
  /// Automorphisms applied after a failed first attempt; empty otherwise.
  std::vector<std::string> normalization;
};

/// Validates, reduces, and on GlueError or ReductionError retries once with
/// a normalized generating vector. Throws ValidationError on invalid input.
Analysis analyze(const FiniteGroup& group, const Signature& sig, const GeneratingVector& vec,
                 GluingStrategy strategy = GluingStrategy::sequential);

}  // namespace surfkernel
