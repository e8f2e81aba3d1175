#pragma once

#include "torus1p/bundles.hpp"
#include "torus1p/errors.hpp"
#include "torus1p/hochschild.hpp"
#include "torus1p/homotopy.hpp"
#include "torus1p/int_matrix.hpp"
#include "torus1p/nielsen.hpp"
#include "torus1p/normal_form.hpp"
#include "torus1p/oracle.hpp"
