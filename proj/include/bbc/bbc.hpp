#ifndef BBC_BBC_HPP
#define BBC_BBC_HPP

#include "bbc/bench.hpp"
#include "bbc/coloring.hpp"
#include "bbc/error.hpp"
#include "bbc/exact.hpp"
#include "bbc/fib_bounds.hpp"
#include "bbc/fibonacci.hpp"
#include "bbc/forest.hpp"
#include "bbc/generators.hpp"
#include "bbc/json_io.hpp"
#include "bbc/rby.hpp"

#endif  // BBC_BBC_HPP
