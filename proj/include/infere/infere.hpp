#pragma once

// Umbrella header.
#include "infere/alphabet.hpp"
#include "infere/chain.hpp"
#include "infere/compile.hpp"
#include "infere/dfa.hpp"
#include "infere/dsl.hpp"
#include "infere/error.hpp"
#include "infere/evaluation.hpp"
#include "infere/fixtures.hpp"
#include "infere/random.hpp"
#include "infere/regex_ast.hpp"
#include "infere/self_consistency.hpp"
