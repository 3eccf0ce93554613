#include <iostream>

#include "qgk/commands.hpp"

int main(int argc, char** argv) { return qgk::dispatch(argc, argv, std::cout, std::cerr); }
