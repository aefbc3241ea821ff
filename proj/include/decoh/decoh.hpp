#pragma once

#include "decoh/errors.hpp"
#include "decoh/units.hpp"
#include "decoh/scattering.hpp"
#include "decoh/numerov.hpp"
#include "decoh/decoherence.hpp"
#include "decoh/golden_section.hpp"
#include "decoh/parallel.hpp"
#include "decoh/field_scan.hpp"
#include "decoh/inversion.hpp"
#include "decoh/toml.hpp"
#include "decoh/config.hpp"
#include "decoh/csv.hpp"
#include "decoh/cli.hpp"
