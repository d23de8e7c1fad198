#pragma once

#include "mdvol/cm_degree.hpp"
#include "mdvol/combinatorics.hpp"
#include "mdvol/equivalence_lab.hpp"
#include "mdvol/error.hpp"
#include "mdvol/localization.hpp"
#include "mdvol/mcmullen.hpp"
#include "mdvol/rational.hpp"
#include "mdvol/serialize.hpp"
#include "mdvol/volume.hpp"
#include "mdvol/weights.hpp"
