#include <iostream>

#include "dkp/io.hpp"

int main(int argc, char** argv) { return dkp::io::main_entry(argc, argv, std::cout, std::cerr); }
