#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <arres/cli.hpp>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    const auto result = arres::run_cli(args, []() {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    });
    std::cout << result.out;
    std::cerr << result.err;
    return result.exit_code;
}
