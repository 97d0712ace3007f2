#include <iostream>
#include <string>
#include <vector>

#include <effd/cli.hpp>

int main(int argc, char **argv)
{
    const std::vector<std::string> args(argv + 1, argv + argc);
    return effd::run_cli(args, std::cout, std::cerr);
}
