#include <iostream>

#include "engel/cli.hpp"

int main(int argc, char** argv) { return engel::command_dispatch(argc, argv, std::cout, std::cerr); }
