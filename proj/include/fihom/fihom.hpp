#pragma once

#include "fihom/colimit.hpp"
#include "fihom/complex.hpp"
#include "fihom/fb_module.hpp"
#include "fihom/fi_homology.hpp"
#include "fihom/fi_module.hpp"
#include "fihom/field.hpp"
#include "fihom/induced.hpp"
#include "fihom/io/json.hpp"
#include "fihom/linalg.hpp"
#include "fihom/matrix.hpp"
#include "fihom/perm.hpp"
#include "fihom/snrep.hpp"
