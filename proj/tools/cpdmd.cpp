#include "cpdmd/cli.hpp"

int main(int argc, char** argv) {
    return cpdmd::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
