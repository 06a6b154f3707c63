#pragma once

#include "avgcase/bench.hpp"
#include "avgcase/bigint.hpp"
#include "avgcase/cayleyhash.hpp"
#include "avgcase/error.hpp"
#include "avgcase/matgrowth.hpp"
#include "avgcase/rng.hpp"
#include "avgcase/stats.hpp"
#include "avgcase/subwords.hpp"
#include "avgcase/whitehead.hpp"
#include "avgcase/wordproblem.hpp"
#include "avgcase/words.hpp"
