#include <string>
#include <vector>

#include "memetrace/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return memetrace::cli::run(args);
}
