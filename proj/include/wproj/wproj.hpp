#pragma once

#include "wproj/error.hpp"
#include "wproj/factor.hpp"
#include "wproj/integer.hpp"
#include "wproj/moduli.hpp"
#include "wproj/wcore.hpp"
#include "wproj/wheight.hpp"
#include "wproj/wnormal.hpp"
#include "wproj/wpdb.hpp"
