#pragma once

#include "freerack/expr.hpp"
#include "freerack/rack.hpp"
#include "freerack/subrack.hpp"
#include "freerack/word.hpp"
