import setuptools


with open("README.md", "r") as fh:
    long_description = fh.read()

setuptools.setup(
    name="laguerre-lab",
    version="0.1.0",
    author="laguerre-lab developers",
    description="High-precision lab for orthogonal polynomials of the deformed Laguerre weight",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=setuptools.find_packages(exclude=["tests", "tests.*"]),
    install_requires=["mpmath", "rich"],
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    entry_points={
        "console_scripts": [
            "laguerre-lab=laguerre_lab.cli:main"
        ],
    },
    python_requires=">=3.8",
)
