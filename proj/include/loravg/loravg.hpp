#pragma once

#include "loravg/averaging.hpp"
#include "loravg/compactness.hpp"
#include "loravg/error.hpp"
#include "loravg/function.hpp"
#include "loravg/io.hpp"
#include "loravg/norms.hpp"
#include "loravg/rearrange.hpp"
#include "loravg/space.hpp"
#include "loravg/step_function.hpp"
#include "loravg/svg.hpp"
