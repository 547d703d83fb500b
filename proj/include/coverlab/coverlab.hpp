#pragma once

#include "coverlab/blocks.hpp"
#include "coverlab/caps.hpp"
#include "coverlab/chain.hpp"
#include "coverlab/congruence.hpp"
#include "coverlab/constructions.hpp"
#include "coverlab/covers.hpp"
#include "coverlab/cycles.hpp"
#include "coverlab/error.hpp"
#include "coverlab/group.hpp"
#include "coverlab/homomorphism.hpp"
#include "coverlab/json_io.hpp"
#include "coverlab/library.hpp"
#include "coverlab/parallel.hpp"
#include "coverlab/permutation.hpp"
#include "coverlab/predicates.hpp"
#include "coverlab/recipes.hpp"
#include "coverlab/small_groups.hpp"
#include "coverlab/stabilizers.hpp"
#include "coverlab/tuple_space.hpp"
#include "coverlab/verify.hpp"
#include "coverlab/wreath.hpp"
