#pragma once

#include "zmoment/arith.hpp"
#include "zmoment/kloosterman.hpp"
#include "zmoment/mollifier.hpp"
#include "zmoment/moments.hpp"
#include "zmoment/numeric.hpp"
#include "zmoment/report.hpp"
#include "zmoment/series.hpp"
#include "zmoment/special.hpp"
