#pragma once

#include "constants.hpp"
#include "control.hpp"
#include "coupling.hpp"
#include "dataset.hpp"
#include "dataset_io.hpp"
#include "errors.hpp"
#include "grid.hpp"
#include "models.hpp"
#include "polarizability.hpp"
#include "rovib.hpp"
#include "spline.hpp"
#include "wigner.hpp"
