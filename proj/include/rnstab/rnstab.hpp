#pragma once

#include "rnstab/errors.hpp"
#include "rnstab/distfn.hpp"
#include "rnstab/tnorm.hpp"
#include "rnstab/vector.hpp"
#include "rnstab/rnspace.hpp"
#include "rnstab/stability.hpp"
#include "rnstab/noise.hpp"
#include "rnstab/solver.hpp"
#include "rnstab/parallel.hpp"
#include "rnstab/verify.hpp"
#include "rnstab/config.hpp"
#include "rnstab/csv.hpp"
#include "rnstab/runner.hpp"
