#include <iostream>

#include "commands.h"

int main(int argc, char** argv) { return modwave::cli::run(argc, argv, std::cout, std::cerr); }
