#pragma once

#include "commands.hpp"
#include "errors.hpp"
#include "estimation.hpp"
#include "inequalities.hpp"
#include "linalg.hpp"
#include "problem.hpp"
#include "quantum.hpp"
#include "random.hpp"
#include "serialize.hpp"
#include "weakval.hpp"
