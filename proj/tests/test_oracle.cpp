#include <doctest.h>
#include "helpers.hpp"
