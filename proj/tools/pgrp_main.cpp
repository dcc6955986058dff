#include <iostream>

#include "pgrp/io.hpp"

int main(int argc, char** argv) { return pgrp::run_command(argc, argv, std::cout, std::cerr); }
