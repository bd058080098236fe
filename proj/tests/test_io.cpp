#include <catch2/catch_amalgamated.hpp>
#include "coverbench/io.hpp"
#include "coverbench/report.hpp"
