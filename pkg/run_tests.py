#!/usr/bin/env python3
"""
Test runner script for the k-sample homogeneity test.
Provides easy commands to run the full test suite or specific test categories.
"""
import sys
import subprocess

MODULES = {
    "kernels": "tests/test_kernels.py",
    "ustat": "tests/test_ustat.py",
    "statistic": "tests/test_statistic.py",
    "bootstrap": "tests/test_bootstrap.py",
    "subsample": "tests/test_subsample.py",
    "datagen": "tests/test_datagen.py",
    "experiments": "tests/test_experiments.py",
    "cli": "tests/test_cli.py",
    "models": "tests/test_models.py",
    "utils": "tests/test_utils.py",
}


def run_tests(args=None):
    """Run pytest with specified arguments"""
    cmd = ["python", "-m", "pytest"]

    if args:
        cmd.extend(args)
    else:
        # Default: everything except the Monte Carlo acceptance runs, with coverage
        cmd.extend([
            "tests/",
            "-v",
            "-m", "not slow",
            "--cov=src",
            "--cov-report=term-missing",
            "--cov-report=html"
        ])

    print(f"Running: {' '.join(cmd)}")
    print("=" * 60)

    result = subprocess.run(cmd)
    return result.returncode


def main():
    """Main entry point"""
    if len(sys.argv) > 1:
        command = sys.argv[1]

        if command == "all":
            # Everything, acceptance runs included, with coverage
            return run_tests([
                "tests/",
                "-v",
                "--cov=src",
                "--cov-report=term-missing",
                "--cov-report=html"
            ])

        elif command == "fast":
            # Skip the slow Monte Carlo runs, no coverage
            return run_tests(["tests/", "-v", "-m", "not slow"])

        elif command == "slow":
            # Monte Carlo acceptance runs only (minutes)
            return run_tests(["tests/", "-v", "-m", "slow"])

        elif command == "integration":
            # End-to-end CLI runs
            return run_tests(["tests/", "-v", "-m", "integration"])

        elif command in MODULES:
            return run_tests([MODULES[command], "-v", "-m", "not slow"])

        elif command == "help":
            print("k-sample homogeneity test runner")
            print("=" * 60)
            print("Usage: python run_tests.py [command]")
            print()
            print("Commands:")
            print("  all          - Run all tests, acceptance runs included, with coverage")
            print("  fast         - Run all tests except the slow Monte Carlo runs")
            print("  slow         - Run only the Monte Carlo acceptance runs")
            print("  integration  - Run the end-to-end CLI tests")
            for name, path in MODULES.items():
                print(f"  {name:<12} - {path}")
            print("  help         - Show this help message")
            return 0

        else:
            print(f"Unknown command: {command}")
            print("Run 'python run_tests.py help' for usage")
            return 1

    else:
        # No arguments: fast suite with coverage
        return run_tests()


if __name__ == "__main__":
    sys.exit(main())
