#pragma once

#include "moq/baselines.hpp"
#include "moq/curve.hpp"
#include "moq/error.hpp"
#include "moq/extended_dist.hpp"
#include "moq/moments.hpp"
#include "moq/oracle/ks.hpp"
#include "moq/oracle/monte_carlo.hpp"
#include "moq/oracle/quadrature.hpp"
#include "moq/oracle/special.hpp"
#include "moq/param_family.hpp"
#include "moq/random.hpp"
#include "moq/sampling.hpp"
#include "moq/spec_file.hpp"
#include "moq/verify.hpp"
