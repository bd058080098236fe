#include "coverbench/dst_core.hpp"
#include "coverbench/io.hpp"
int main() { return 0; }
