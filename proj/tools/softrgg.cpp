#include <iostream>

#include "softrgg/app/commands.hpp"

int main(int argc, char** argv) { return srgg::app::run_cli(argc, argv, std::cout, std::cerr); }
