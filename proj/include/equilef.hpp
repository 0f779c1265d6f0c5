#pragma once

#include "equilef/core.hpp"
#include "equilef/fractions.hpp"
#include "equilef/gsets.hpp"
#include "equilef/hsm.hpp"
#include "equilef/kkcat.hpp"
#include "equilef/lefschetz.hpp"
#include "equilef/repring.hpp"
