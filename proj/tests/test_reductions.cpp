#include <catch2/catch_amalgamated.hpp>
#include "coverbench/reductions.hpp"
