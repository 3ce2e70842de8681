from os import path

from setuptools import setup, find_packages

import cofield


def load_file(filename):
    filename = path.join(path.abspath(path.dirname(__file__)), filename)
    with open(filename, "r") as file:
        return file.read()


setup(
    name="cofield",
    version=cofield.__version__,
    description="Interdisciplinarity of research fields from co-authorship",
    long_description=load_file("README.rst"),
    long_description_content_type="text/x-rst",
    packages=sorted(find_packages(exclude=("*.tests",))),
    package_data={"cofield.datasets": ["data/*.csv"]},
    include_package_data=True,
    install_requires=["numpy", "scipy", "pandas"],
    setup_requires=["pytest-runner"],
    tests_require=["pytest"],
    python_requires=">=3.8",
    entry_points={"console_scripts": ["cofield=cofield.cli:main"]},
    zip_safe=False,
    classifiers=[
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent"
    ]
)
