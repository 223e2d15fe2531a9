#pragma once

#include "qwmatch/classical_walk.hpp"
#include "qwmatch/demos.hpp"
#include "qwmatch/graph.hpp"
#include "qwmatch/io.hpp"
#include "qwmatch/matrix.hpp"
#include "qwmatch/quantum_walk.hpp"
#include "qwmatch/random_instance.hpp"
#include "qwmatch/verifier.hpp"
