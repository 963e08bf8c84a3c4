#pragma once

#include "nimhoff/common.hpp"
#include "nimhoff/subtraction_set.hpp"
#include "nimhoff/set_spec.hpp"
#include "nimhoff/game.hpp"
#include "nimhoff/grundy.hpp"
#include "nimhoff/stair.hpp"
#include "nimhoff/periodicity.hpp"
#include "nimhoff/closed_form.hpp"
#include "nimhoff/oracle.hpp"
#include "nimhoff/solver.hpp"
