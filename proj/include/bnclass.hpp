/// @file bnclass.hpp
/// @brief Umbrella header for the bnclass library.

#pragma once

#include "bnclass/error.hpp"
#include "bnclass/zdd.hpp"
#include "bnclass/boolring.hpp"
#include "bnclass/ordering.hpp"
#include "bnclass/groebner.hpp"
#include "bnclass/variety.hpp"
#include "bnclass/network.hpp"
#include "bnclass/search.hpp"
#include "bnclass/report.hpp"
#include "bnclass/cli.hpp"
