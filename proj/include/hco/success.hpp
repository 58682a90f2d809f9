#pragma once

#include "hco/programs.hpp"

namespace hco {

// Success probability by exhaustive enumeration: runs the program against
// every one of the N^M total functions with a plain (non-purified) oracle and
// averages.  Classical queries split the run into per-x branches carrying a
// transcript, which is exactly how the record register decomposes for a fixed
// function.  Serves as the independent reference for the simulator.
double enumeration_success(const HybridProgram& p);

// convenience: run the program in the given picture and decode the output
double simulated_success(const HybridProgram& p, Picture picture = Picture::Compressed);

}  // namespace hco
