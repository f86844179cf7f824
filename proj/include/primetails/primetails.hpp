#pragma once

#include "primetails/bignat.hpp"
#include "primetails/chernoff.hpp"
#include "primetails/construction.hpp"
#include "primetails/digits.hpp"
#include "primetails/envelope.hpp"
#include "primetails/errors.hpp"
#include "primetails/sieve.hpp"
#include "primetails/verify.hpp"
