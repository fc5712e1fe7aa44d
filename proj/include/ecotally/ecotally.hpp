// SPDX-License-Identifier: Apache-2.0
//
// Convenience umbrella: the full library surface.
#pragma once

#include "ecotally/analytics.hpp"
#include "ecotally/assessment.hpp"
#include "ecotally/config.hpp"
#include "ecotally/domain.hpp"
#include "ecotally/embodied.hpp"
#include "ecotally/log_io.hpp"
#include "ecotally/operational.hpp"
#include "ecotally/report.hpp"
#include "ecotally/scenarios.hpp"
#include "ecotally/units.hpp"
