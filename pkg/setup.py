from setuptools import find_packages, setup

import glob

with open("README.md", "r") as readme:
    long_description = readme.read()


additional_files = ["py.typed"]
for filename in glob.iglob("./protoperf/datasets/**", recursive=True):
    if filename.endswith(".json"):
        additional_files.append(filename.replace("./protoperf/", ""))

install_requires = [
    line.strip()
    for line in open("requirements.txt").read().split("\n")
    if line.strip()
]


setup(
    name="protoperf",
    license="NCSA",
    description="Performance estimation of security protocols from cryptographic cost models",
    version="1.0.0",
    packages=find_packages(),
    package_dir={"protoperf": "./protoperf"},
    long_description=long_description,
    long_description_content_type="text/markdown",
    install_requires=install_requires,
    extras_require={"pycryptodome": ["pycryptodome>=3.9"]},
    include_package_data=True,
    package_data={"protoperf": additional_files},
    entry_points={"console_scripts": ["protoperf=protoperf.cli:main"]},
    keywords=[
        "security protocols",
        "performance estimation",
        "cryptography",
        "benchmarking",
        "cost models",
        "polynomial regression",
    ],
    zip_safe=False,
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Intended Audience :: Developers",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "License :: OSI Approved",
        "Operating System :: MacOS :: MacOS X",
        "Operating System :: Microsoft :: Windows",
        "Operating System :: POSIX",
        "Programming Language :: Python",
        "Topic :: Security :: Cryptography",
        "Topic :: System :: Benchmark",
    ],
    python_requires=">=3.8",
)
