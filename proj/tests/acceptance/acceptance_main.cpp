#include "coverbench/dst_core.hpp"
#include "coverbench/reductions.hpp"
int main() { return 0; }
