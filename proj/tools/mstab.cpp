#include <cstdio>
#include "mstab/state_io.hpp"
#include "mstab/circuit.hpp"
int main() { std::puts("placeholder"); return 0; }
