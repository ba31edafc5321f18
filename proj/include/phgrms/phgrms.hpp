#pragma once

#include "phgrms/bench.hpp"
#include "phgrms/denoise.hpp"
#include "phgrms/image.hpp"
#include "phgrms/metrics.hpp"
#include "phgrms/noise.hpp"
#include "phgrms/pgm.hpp"
