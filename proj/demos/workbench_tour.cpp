#include "coverbench/dst_core.hpp"
int main() { return 0; }
