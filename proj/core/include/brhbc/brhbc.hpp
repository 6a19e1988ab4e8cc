// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the brhbc authors

#ifndef BRHBC_BRHBC_HPP
#define BRHBC_BRHBC_HPP

#include "brhbc/body_line.hpp"
#include "brhbc/calibration.hpp"
#include "brhbc/channel.hpp"
#include "brhbc/constants.hpp"
#include "brhbc/dielectric.hpp"
#include "brhbc/dipole.hpp"
#include "brhbc/errors.hpp"
#include "brhbc/leakage.hpp"
#include "brhbc/safety.hpp"
#include "brhbc/scenario.hpp"
#include "brhbc/text_io.hpp"
#include "brhbc/twoport.hpp"

#endif
