#pragma once

#include "bitcore.hpp"
#include "cascade_adder.hpp"
#include "cost_model.hpp"
#include "csa_multiplier.hpp"
#include "errors.hpp"
#include "flash_adder.hpp"
#include "report.hpp"
#include "verify.hpp"
