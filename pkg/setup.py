from setuptools import setup, find_packages


def get_requirements():
    """
    Get the requirements from a file.

    :return: A list of requirements.
    :rtype: list
    """
    with open('requirements.txt') as f:
        requirements = f.read().splitlines()
        return requirements


setup(
    name='dicke_husimi',
    version='0.0.0',
    description='Husimi distributions, Wehrl entropy and Husimi zeros of the Dicke model ground state',
    long_description=open('README.md').read(),
    include_package_data=True,
    packages=find_packages(exclude=['tests', 'tests.*']),
    classifiers=[
        'License :: OSI Approved :: Apache License, Version 2.0 (Apache-2.0)',
        'Programming Language :: Python :: 3.9',
    ],
    python_requires='>=3.9',
    install_requires=get_requirements(),
    entry_points={
        'console_scripts': [
            'dicke-husimi=dickeHusimi.cli:main',
        ],
    },
)
