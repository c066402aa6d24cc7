#pragma once

#include "vecdep/archimedean.hpp"
#include "vecdep/assess.hpp"
#include "vecdep/asymptotics.hpp"
#include "vecdep/collapse.hpp"
#include "vecdep/core.hpp"
#include "vecdep/error.hpp"
#include "vecdep/kendall.hpp"
#include "vecdep/measures.hpp"
#include "vecdep/random.hpp"
#include "vecdep/stats.hpp"
