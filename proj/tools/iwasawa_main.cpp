#include <iostream>
#include <string>
#include <vector>

#include "iwasawa/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return iwasawa::run_cli(args, std::cout, std::cerr);
}
