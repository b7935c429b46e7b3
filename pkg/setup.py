from setuptools import find_packages, setup

setup(
    name="bracelit",
    packages=find_packages(),
)
