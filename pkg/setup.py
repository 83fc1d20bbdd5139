import setuptools

with open("README.md", "r") as fh:
    long_description = fh.read()

setuptools.setup(
    name="cliquelab",
    version="0.1.0",
    description="Clique tensor spectral radii, graph Lagrangians and clique-number bounds",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=setuptools.find_packages(),
    include_package_data=True,
    python_requires=">=3.8",
    classifiers=(
        "Programming Language :: Python",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "License :: OSI Approved :: MIT License",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Intended Audience :: Science/Research",
    ),
    install_requires=[
        "click",
        "numpy >= 1.17",
        "networkx >= 2.4",
        "scipy",
    ],
    entry_points={
        "console_scripts": [
            "cliquelab=cliquelab.cli:cli",
        ],
    },
    zip_safe=False,
)
